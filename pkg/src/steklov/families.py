"""Named tree families: generators, closed-form spectra, eigenfunctions.

Families and their documented vertex labelings:

* path ``P(n)``: vertices ``0..n-1`` along the path.
* almost fork ``AF(b, r)``: ``b`` paths glued at a junction ``u0 = 0``; one
  arm of length ``r+1`` (vertices ``1..r+1`` outward), the other ``b-1``
  arms of length ``r``.
* crab ``CG(b1, b2, r)``: a central edge ``u0 = 0`` ~ ``v0 = 1`` with
  ``b1`` (resp. ``b2``) arms of length ``r`` glued to each end.
* barbell ``B(p, q, D)``: a path ``w1..w_(D-1)`` (vertices ``0..D-2``)
  with ``p`` pendants on ``w1`` and ``q`` pendants on ``w_(D-1)``.
* almost seesaw ``AS(r, b, c)``: arms of lengths ``r``, ``r+1`` and
  ``b-2`` arms of length ``c`` glued at a junction ``o0 = 0``.
* even ruler ``Ruler(r, k)``: the path ``P_(2r+1)`` (vertices ``0..2r``)
  with ``k`` pendant edges at the midpoint ``r``.

Within arms, index ``i`` counts outward from the junction and the vertex
at index ``i`` sits at distance ``i`` from it.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from steklov.errors import FamilyParameterError
from steklov.graph_core import TreeWithLeafBoundary
from steklov.spectral import EigenpairClaim

KINDS = ("path", "almost_fork", "crab", "barbell", "almost_seesaw", "even_ruler")

_CLI_NAMES = {
    "path": "path",
    "af": "almost_fork",
    "cg": "crab",
    "barbell": "barbell",
    "as": "almost_seesaw",
    "ruler": "even_ruler",
}
_CLI_PREFIX = {kind: short for short, kind in _CLI_NAMES.items()}
_ARITY = {
    "path": 1,
    "almost_fork": 2,
    "crab": 3,
    "barbell": 3,
    "almost_seesaw": 3,
    "even_ruler": 2,
}


@dataclass(frozen=True)
class FamilyDescriptor:
    """Tagged parameter record for one of the named families."""

    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FamilyParameterError(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        if len(self.params) != _ARITY[self.kind]:
            raise FamilyParameterError(
                f"{self.kind} takes {_ARITY[self.kind]} parameters, got {len(self.params)}"
            )
        self._validate()

    def _validate(self):
        p = self.params
        if self.kind == "path" and p[0] < 2:
            raise FamilyParameterError("path needs n >= 2")
        elif self.kind == "almost_fork" and (p[0] < 2 or p[1] < 1):
            raise FamilyParameterError("almost fork needs b >= 2, r >= 1")
        elif self.kind == "crab" and min(p) < 1:
            raise FamilyParameterError("crab needs b1, b2, r >= 1")
        elif self.kind == "barbell" and (p[0] < 1 or p[1] < 1 or p[2] < 2):
            raise FamilyParameterError("barbell needs p, q >= 1 and D >= 2")
        elif self.kind == "almost_seesaw":
            r, b, c = p
            if r < 1 or b < 2 or c < 0 or c > r:
                raise FamilyParameterError("almost seesaw needs r >= 1, b >= 2, 0 <= c <= r")
            if b >= 3 and c < 1:
                # sigma_4 = 1/c is undefined at c = 0
                raise FamilyParameterError("almost seesaw with b >= 3 needs c >= 1")
        elif self.kind == "even_ruler" and (p[0] < 1 or p[1] < 0):
            raise FamilyParameterError("even ruler needs r >= 1, pendants >= 0")

    def __str__(self):
        return f"{_CLI_PREFIX[self.kind]}:{','.join(str(x) for x in self.params)}"


def path_family(n: int) -> FamilyDescriptor:
    return FamilyDescriptor("path", (n,))


def almost_fork(b: int, r: int) -> FamilyDescriptor:
    return FamilyDescriptor("almost_fork", (b, r))


def crab(b1: int, b2: int, r: int) -> FamilyDescriptor:
    return FamilyDescriptor("crab", (b1, b2, r))


def barbell(p: int, q: int, d: int) -> FamilyDescriptor:
    return FamilyDescriptor("barbell", (p, q, d))


def almost_seesaw(r: int, b: int, c: int) -> FamilyDescriptor:
    return FamilyDescriptor("almost_seesaw", (r, b, c))


def even_ruler(r: int, pendants: int) -> FamilyDescriptor:
    return FamilyDescriptor("even_ruler", (r, pendants))


def parse_family(text: str) -> FamilyDescriptor:
    """Parse a CLI family string such as ``af:3,1`` or ``barbell:2,3,6``."""
    name, sep, rest = text.partition(":")
    if not sep or name.strip().lower() not in _CLI_NAMES:
        raise FamilyParameterError(f"invalid family string {text!r}")
    try:
        params = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise FamilyParameterError(f"invalid family parameters in {text!r}") from None
    return FamilyDescriptor(_CLI_NAMES[name.strip().lower()], params)


# ---------------------------------------------------------------------------
# layouts: edges plus a labeling map from symbolic positions to indices

def _chain(edges, labels, start, count, prefix):
    """Attach a path of `count` new vertices to `start`; label outward 1..count."""
    prev = start
    idx = labels["next"]
    for i in range(1, count + 1):
        edges.append((prev, idx))
        labels[prefix + (i,)] = idx
        prev = idx
        idx += 1
    labels["next"] = idx


def _layout(desc: FamilyDescriptor):
    """Edges and the position->index labeling for a family descriptor."""
    kind, p = desc.kind, desc.params
    edges: list[tuple[int, int]] = []
    labels: dict = {"next": 0}
    if kind == "path":
        (n,) = p
        labels["next"] = 1
        labels[("v", 0)] = 0
        _chain(edges, labels, 0, n - 1, ("v",))
    elif kind == "almost_fork":
        b, r = p
        labels[("u0",)] = 0
        labels["next"] = 1
        _chain(edges, labels, 0, r + 1, ("u", 1))
        for ell in range(2, b + 1):
            _chain(edges, labels, 0, r, ("u", ell))
    elif kind == "crab":
        b1, b2, r = p
        labels[("u0",)] = 0
        labels[("v0",)] = 1
        labels["next"] = 2
        edges.append((0, 1))
        for ell in range(1, b1 + 1):
            _chain(edges, labels, 0, r, ("u", ell))
        for ell in range(1, b2 + 1):
            _chain(edges, labels, 1, r, ("v", ell))
    elif kind == "barbell":
        pp, q, d = p
        for i in range(1, d):
            labels[("w", i)] = i - 1
        edges += [(i, i + 1) for i in range(d - 2)]
        labels["next"] = d - 1
        for j in range(1, pp + 1):
            edges.append((labels[("w", 1)], labels["next"]))
            labels[("u", j)] = labels["next"]
            labels["next"] += 1
        for j in range(1, q + 1):
            edges.append((labels[("w", d - 1)], labels["next"]))
            labels[("v", j)] = labels["next"]
            labels["next"] += 1
    elif kind == "almost_seesaw":
        r, b, c = p
        labels[("o0",)] = 0
        labels["next"] = 1
        _chain(edges, labels, 0, r, ("u",))
        _chain(edges, labels, 0, r + 1, ("v",))
        for ell in range(1, b - 1):
            _chain(edges, labels, 0, c, ("w", ell))
    else:  # even_ruler
        r, k = p
        labels["next"] = 1
        labels[("v", 0)] = 0
        _chain(edges, labels, 0, 2 * r, ("v",))
        for j in range(1, k + 1):
            edges.append((r, labels["next"]))
            labels[("p", j)] = labels["next"]
            labels["next"] += 1
    del labels["next"]
    return edges, labels


def make_family(desc: FamilyDescriptor) -> TreeWithLeafBoundary:
    """Build the tree for a descriptor, with the documented labeling."""
    edges, labels = _layout(desc)
    return TreeWithLeafBoundary(1 + max(max(e) for e in edges), edges)


# ---------------------------------------------------------------------------
# closed-form spectra


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Eigenvalues with multiplicities; exact rationals where the closed
    form is rational, floats for the irrational seesaw pair."""

    entries: tuple[tuple[Fraction | float, int], ...]

    def expand(self) -> list[float]:
        out = []
        for value, mult in self.entries:
            out.extend([float(value)] * mult)
        return out

    @property
    def leaf_total(self) -> int:
        return sum(mult for _, mult in self.entries)


def _merge(values) -> ClosedFormSpectrum:
    entries: list[tuple[Fraction | float, int]] = []
    for v in sorted(values, key=float):
        if entries and float(entries[-1][0]) == float(v):
            entries[-1] = (entries[-1][0], entries[-1][1] + 1)
        else:
            entries.append((v, 1))
    return ClosedFormSpectrum(entries=tuple(entries))


def seesaw_discriminant(r: int, b: int, c: int) -> int:
    """Radicand of the seesaw closed form: (b-1)^2 + 4(r-c)(r-c+1)."""
    return (b - 1) ** 2 + 4 * (r - c) * (r - c + 1)


def seesaw_sigma(r: int, b: int, c: int, sign: int) -> Fraction | float:
    """The seesaw eigenvalue C^-(r,b,c) (sign=-1) or C^+(r,b,c) (sign=+1).

    Exact when the discriminant is a perfect square, float otherwise.
    """
    disc = seesaw_discriminant(r, b, c)
    num = 2 * b * r + b + 2 * c - 2 * r - 1
    den = 2 * (b * r * r + b * r + 2 * c * r + c - 2 * r * r - 2 * r)
    root = math.isqrt(disc)
    if root * root == disc:
        return Fraction(num + sign * root, den)
    return (num + sign * math.sqrt(disc)) / den


def seesaw_amplitudes(r: int, b: int, c: int, sign: int):
    """Arm amplitudes (alpha, beta) used by the seesaw eigenfunctions.

    ``sign=+1`` gives (alpha+, beta-) for the sigma_2 eigenfunction,
    ``sign=-1`` gives (alpha-, beta+) for the sigma_3 one.
    """
    root = math.sqrt(seesaw_discriminant(r, b, c))
    alpha = 0.5 * (sign * root - b - 2 * c + 2 * r + 3)
    beta = 0.5 * (-sign * root - b + 2 * c - 2 * r + 1)
    return alpha, beta


def predicted_spectrum(desc: FamilyDescriptor) -> ClosedFormSpectrum:
    """The full closed-form Steklov spectrum of a family member."""
    kind, p = desc.kind, desc.params
    zero = Fraction(0)
    if kind == "path":
        (n,) = p
        values = [zero, Fraction(2, n - 1)]
    elif kind == "almost_fork":
        b, r = p
        values = [zero, Fraction(b, b * (r + 1) - 1)] + [Fraction(1, r)] * (b - 2)
    elif kind == "crab":
        b1, b2, r = p
        b = b1 + b2
        values = [zero, Fraction(b, b1 * b2 + r * b)] + [Fraction(1, r)] * (b - 2)
    elif kind == "barbell":
        pp, q, d = p
        values = [zero, Fraction(pp + q, (d - 2) * pp * q + pp + q)] + [Fraction(1)] * (pp + q - 2)
    elif kind == "almost_seesaw":
        r, b, c = p
        values = [zero, seesaw_sigma(r, b, c, -1)]
        if b >= 3:
            values.append(seesaw_sigma(r, b, c, +1))
            values += [Fraction(1, c)] * (b - 3)
    else:  # even_ruler
        r, k = p
        values = [zero, Fraction(1, r)]
        if k >= 1:
            # symmetric midpoint mode plus the pendant-difference modes
            values += [Fraction(k + 2, k * r + 2)] + [Fraction(1)] * (k - 1)
    return _merge(values)


# ---------------------------------------------------------------------------
# explicit eigenfunctions


def _claim(labels, n, sigma, assignments, label, advisory=False) -> EigenpairClaim:
    values = [0.0] * n
    for pos, value in assignments:
        values[labels[pos]] = float(value)
    return EigenpairClaim(
        sigma=float(sigma), values=tuple(values), label=label, advisory=advisory
    )


def predicted_eigenfunctions(desc: FamilyDescriptor) -> list[EigenpairClaim]:
    """Explicit eigenfunction claims for the fork, crab, barbell and seesaw.

    All claims verify to round-off except the barbell sigma_2 function,
    which is emitted as stated but flagged ``advisory`` (it is not an
    eigenfunction unless p == q; the eigenvalue itself is correct and is
    checked numerically instead).
    """
    kind, p = desc.kind, desc.params
    if kind in ("path", "even_ruler"):
        raise FamilyParameterError(f"no explicit eigenfunction table for {kind}")
    edges, labels = _layout(desc)
    n = 1 + max(max(e) for e in edges)
    ones = _claim(labels, n, 0.0, [(pos, 1.0) for pos in labels], "xi1")
    claims = [ones]

    if kind == "almost_fork":
        b, r = p
        s2 = Fraction(b, b * (r + 1) - 1)
        assign = [(("u0",), Fraction(b - 1, b) * s2)]
        assign += [(("u", 1, i), -(b - 1) * (1 - (r + 1 - i) * s2)) for i in range(1, r + 2)]
        for ell in range(2, b + 1):
            assign += [(("u", ell, i), 1 - (r - i) * s2) for i in range(1, r + 1)]
        claims.append(_claim(labels, n, s2, assign, "xi2"))
        for m in range(3, b + 1):
            sm = Fraction(1, r)
            assign = [(("u", m - 1, i), 1 - (r - i) * sm) for i in range(1, r + 1)]
            assign += [(("u", m, i), -1 + (r - i) * sm) for i in range(1, r + 1)]
            claims.append(_claim(labels, n, sm, assign, f"xi{m}"))

    elif kind == "crab":
        b1, b2, r = p
        s2 = Fraction(b1 + b2, b1 * b2 + r * (b1 + b2))
        assign = [(("u0",), b2 * (1 - r * s2)), (("v0",), -b1 * (1 - r * s2))]
        for ell in range(1, b1 + 1):
            assign += [(("u", ell, i), b2 * (1 - (r - i) * s2)) for i in range(1, r + 1)]
        for ell in range(1, b2 + 1):
            assign += [(("v", ell, i), -b1 * (1 - (r - i) * s2)) for i in range(1, r + 1)]
        claims.append(_claim(labels, n, s2, assign, "xi2"))
        sm = Fraction(1, r)
        for m in range(3, b1 + 2):
            assign = [(("u", m - 2, i), 1 - (r - i) * sm) for i in range(1, r + 1)]
            assign += [(("u", m - 1, i), -1 + (r - i) * sm) for i in range(1, r + 1)]
            claims.append(_claim(labels, n, sm, assign, f"xi{m}"))
        for m in range(b1 + 2, b1 + b2 + 1):
            assign = [(("v", m - b1 - 1, i), 1 - (r - i) * sm) for i in range(1, r + 1)]
            assign += [(("v", m - b1, i), -1 + (r - i) * sm) for i in range(1, r + 1)]
            claims.append(_claim(labels, n, sm, assign, f"xi{m}"))

    elif kind == "barbell":
        pp, q, d = p
        s2 = Fraction(pp + q, (d - 2) * pp * q + pp + q)
        slope = Fraction(2 * pp * q, (d - 2) * pp * q + pp + q)
        assign = [(("u", j), 1) for j in range(1, pp + 1)]
        assign += [(("w", i), 1 - s2 + (i - 1) * slope) for i in range(1, d)]
        assign += [(("v", j), -1) for j in range(1, q + 1)]
        claims.append(_claim(labels, n, s2, assign, "f2", advisory=True))
        for m in range(2, pp + 1):
            claims.append(
                _claim(labels, n, 1.0, [(("u", 1), 1), (("u", m), -1)], f"f_u{m}")
            )
        for m in range(2, q + 1):
            claims.append(
                _claim(labels, n, 1.0, [(("v", 1), 1), (("v", m), -1)], f"f_v{m}")
            )

    else:  # almost_seesaw
        r, b, c = p
        pairs = [(2, -1, +1)] + ([(3, +1, -1)] if b >= 3 else [])
        for idx, sigma_sign, amp_sign in pairs:
            s = float(seesaw_sigma(r, b, c, sigma_sign))
            alpha, beta = seesaw_amplitudes(r, b, c, amp_sign)
            assign = [(("o0",), 1 - c * s)]
            assign += [(("u", i), alpha * (1 - (r - i) * s)) for i in range(1, r + 1)]
            assign += [(("v", i), beta * (1 - (r + 1 - i) * s)) for i in range(1, r + 2)]
            for ell in range(1, b - 1):
                assign += [(("w", ell, i), 1 - (c - i) * s) for i in range(1, c + 1)]
            claims.append(_claim(labels, n, s, assign, f"xi{idx}"))
        for m in range(4, b + 1):
            sm = Fraction(1, c)
            assign = [(("w", m - 3, i), 1 - (c - i) * sm) for i in range(1, c + 1)]
            assign += [(("w", m - 2, i), -1 + (c - i) * sm) for i in range(1, c + 1)]
            claims.append(_claim(labels, n, sm, assign, f"xi{m}"))

    return claims


# ---------------------------------------------------------------------------
# even-diameter attainers and the leaf-count lower-bound construction


def even_attainer(r: int, shape) -> TreeWithLeafBoundary:
    """Glue a rooted tree of depth <= r onto the midpoint of ``P_(2r+1)``.

    ``shape`` is a preorder level sequence of the hanging rooted tree with
    depths relative to the midpoint (so ``[]`` gives the bare path and
    ``[1, 1]`` two pendant edges).  The result has diameter ``2r`` and
    second Steklov eigenvalue ``1/r``.
    """
    if r < 1:
        raise FamilyParameterError("even attainer needs r >= 1")
    shape = [int(x) for x in shape]
    if shape:
        if shape[0] != 1 or min(shape) < 1:
            raise FamilyParameterError("shape must be a level sequence starting at depth 1")
        if max(shape) > r:
            raise FamilyParameterError(f"shape depth {max(shape)} exceeds r={r}")
        for prev_d, next_d in zip(shape, shape[1:]):
            if next_d > prev_d + 1:
                raise FamilyParameterError("level sequence may deepen by at most one per step")
    edges = [(i, i + 1) for i in range(2 * r)]
    stack = [(r, 0)]  # (vertex, depth)
    nxt = 2 * r + 1
    for depth in shape:
        while stack[-1][1] >= depth:
            stack.pop()
        edges.append((stack[-1][0], nxt))
        stack.append((nxt, depth))
        nxt += 1
    return TreeWithLeafBoundary(nxt, edges)


def lower_bound_construction(b: int, n: int) -> TreeWithLeafBoundary:
    """A tree with ``b`` leaves and ``n`` vertices maximizing sigma_2.

    For ``n = b*r + 2`` this is the almost fork ``AF(b, r)``; otherwise the
    smallest ``r`` with ``2r + b - 1 <= n <= b*r + 1`` is used and the
    ``n - 2r - 1`` off-path vertices are distributed greedily into
    ``b - 2`` midpoint arms of length at most ``r`` (giving sigma_2 = 1/r).
    """
    if b < 3:
        raise FamilyParameterError("construction needs b >= 3")
    if n < b + 1:
        raise FamilyParameterError(f"need n >= b + 1, got n={n}")
    quotient, rem = divmod(n - 2, b)
    if rem == 0 and quotient >= 1:
        return make_family(almost_fork(b, quotient))
    r = max(1, -(-(n - 1) // b))
    if not (2 * r + b - 1 <= n <= b * r + 1):
        raise FamilyParameterError(f"no admissible arm length r for (b={b}, n={n})")
    spare = n - 2 * r - 1
    arm_lengths = []
    for arms_left in range(b - 2, 0, -1):
        take = min(r, spare - (arms_left - 1))
        arm_lengths.append(take)
        spare -= take
    edges = [(i, i + 1) for i in range(2 * r)]
    nxt = 2 * r + 1
    for length in arm_lengths:
        prev = r
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return TreeWithLeafBoundary(nxt, edges)
