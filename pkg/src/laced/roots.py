"""Simply laced root systems with exact arithmetic.

Roots live either in an ambient coordinate space (stored as integer
numerators over one positive denominator, so all the hot arithmetic is plain
integer work) or intrinsically as integer coefficient vectors over a shared
positive semidefinite Gram form.  In the intrinsic picture two vectors are
equal when their difference lies in the radical of the form, so the canonical
key of a vector v is the tuple G v of its inner products with the generators.

The reflection closure is the production algorithm for the set of norm-2
lattice vectors generated by a seed; the lattice short-vector enumeration in
``exactlin`` stays an independent oracle for it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InvariantError
from .exactlin import (
    Definiteness,
    RatMatrix,
    definiteness,
    integer_determinant,
    integer_inverse,
    kernel_basis,
    primitive_integer_vector,
)
from .spectra import SignedGraph, connected_without, smith_classify

Q = Fraction


class AmbientSpace:
    """Euclidean coordinate space of a fixed finite dimension."""

    __slots__ = ("dim",)

    def __init__(self, dim: int) -> None:
        if dim < 1:
            raise ValueError("ambient dimension must be positive")
        self.dim = dim

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AmbientSpace) and self.dim == other.dim

    def __hash__(self) -> int:
        return hash(("ambient", self.dim))

    def __repr__(self) -> str:
        return f"AmbientSpace({self.dim})"


class FormSpace:
    """Inner products prescribed by an integer Gram form of n generators.

    The form must be symmetric with diagonal 2 and positive semidefinite;
    semidefiniteness is what makes quotienting by the radical a valid notion
    of equality.
    """

    __slots__ = ("gram", "_hash")

    def __init__(self, gram: Sequence[Sequence[int]]) -> None:
        grid = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(grid)
        if n == 0 or any(len(row) != n for row in grid):
            raise ValueError("Gram form must be square")
        if any(grid[i][j] != grid[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram form must be symmetric")
        if any(grid[i][i] != 2 for i in range(n)):
            raise ValueError("Gram form must have diagonal 2")
        if definiteness(RatMatrix(grid)) is Definiteness.INDEFINITE:
            raise ValueError("Gram form must be positive semidefinite")
        self.gram = grid
        self._hash = hash(grid)

    @classmethod
    def _trusted(cls, grid: tuple[tuple[int, ...], ...]) -> "FormSpace":
        # caller has already established symmetry, diagonal 2 and semidefiniteness
        obj = object.__new__(cls)
        obj.gram = grid
        obj._hash = hash(grid)
        return obj

    @property
    def n(self) -> int:
        return len(self.gram)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormSpace) and self.gram == other.gram

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FormSpace(n={self.n})"


Space = Union[AmbientSpace, FormSpace]


class Root:
    """A vector handled exactly, in ambient coordinates or over a Gram form.

    ``nums``/``den`` hold the normalized scaled-integer representation; for
    intrinsic roots ``den`` is 1 and ``nums`` are the generator coefficients.
    ``dvec`` is the companion vector used for inner products (the numerators
    themselves in the ambient case, G @ nums in the intrinsic case), and
    ``key`` is the canonical identity used for equality and ordering.
    """

    __slots__ = ("space", "nums", "den", "dvec", "key", "_hash")

    def __init__(self) -> None:
        raise TypeError("use ambient_root or lattice_root")

    @property
    def is_ambient(self) -> bool:
        return type(self.space) is AmbientSpace

    @property
    def coords(self) -> tuple[Fraction, ...]:
        if not self.is_ambient:
            raise ValueError("intrinsic root has no ambient coordinates")
        d = self.den
        return tuple(Q(v, d) for v in self.nums)

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.is_ambient:
            raise ValueError("ambient root has no generator coefficients")
        return self.nums

    def norm2(self) -> Fraction:
        return Q(sum(map(mul, self.nums, self.dvec)), self.den * self.den)

    def dot(self, other: "Root") -> Fraction:
        sp = self.space
        if sp is not other.space and sp != other.space:
            raise ValueError("roots live in different spaces")
        return Q(sum(map(mul, self.nums, other.dvec)), self.den * other.den)

    def sort_key(self):
        if type(self.space) is FormSpace:
            return self.key
        if self.den == 1:
            return self.nums
        d = self.den
        return tuple(Q(v, d) for v in self.nums)

    def __neg__(self) -> "Root":
        if self.is_ambient:
            nums = tuple(-v for v in self.nums)
            return _make_ambient_normalized(self.space, nums, self.den)
        return _make_lattice_raw(self.space, tuple(-v for v in self.nums), tuple(-v for v in self.dvec))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Root):
            return NotImplemented
        return self.key == other.key and (self.space is other.space or self.space == other.space)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.is_ambient:
            return f"Root({' '.join(_fmt(Q(v, self.den)) for v in self.nums)})"
        return f"Root(coeffs={list(self.nums)})"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _make_ambient_normalized(space: AmbientSpace, nums: tuple[int, ...], den: int) -> Root:
    # assumes gcd(content(nums), den) == 1 and den >= 1 already
    r = object.__new__(Root)
    r.space = space
    r.nums = nums
    r.den = den
    r.dvec = nums
    r.key = (nums, den)
    r._hash = hash((space.dim, r.key))
    return r


def _make_ambient(space: AmbientSpace, nums: Sequence[int], den: int) -> Root:
    nums = tuple(nums)
    if den < 0:
        den = -den
        nums = tuple(-v for v in nums)
    if den != 1:
        g = den
        for v in nums:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            den //= g
            nums = tuple(v // g for v in nums)
    return _make_ambient_normalized(space, nums, den)


def _make_lattice_raw(space: FormSpace, nums: tuple[int, ...], dvec: tuple[int, ...]) -> Root:
    r = object.__new__(Root)
    r.space = space
    r.nums = nums
    r.den = 1
    r.dvec = dvec
    r.key = dvec
    r._hash = hash((space._hash, dvec))
    return r


def ambient_root(space: AmbientSpace, coords: Sequence) -> Root:
    """Build an ambient root from exact rational coordinates."""
    fracs = [Q(x) for x in coords]
    if len(fracs) != space.dim:
        raise ValueError(f"expected {space.dim} coordinates, got {len(fracs)}")
    den = 1
    for x in fracs:
        den = den * x.denominator // math.gcd(den, x.denominator)
    nums = tuple(int(x * den) for x in fracs)
    return _make_ambient_normalized(space, nums, den)


def lattice_root(space: FormSpace, coeffs: Sequence[int]) -> Root:
    """Build an intrinsic root from integer coefficients over the form's generators."""
    nums = tuple(int(c) for c in coeffs)
    if len(nums) != space.n:
        raise ValueError(f"expected {space.n} coefficients, got {len(nums)}")
    dvec = tuple(sum(map(mul, row, nums)) for row in space.gram)
    return _make_lattice_raw(space, nums, dvec)


def _idot(x: Root, y: Root) -> int:
    # trusted-path inner product; integrality is an invariant of admitted sets
    s = sum(map(mul, x.nums, y.dvec))
    dd = x.den * y.den
    if dd == 1:
        return s
    q, r = divmod(s, dd)
    if r:
        raise InvariantError("non-integer inner product on the trusted path")
    return q


def _reflect(x: Root, y: Root, t: int) -> Root:
    # x - t*y for integer t
    if type(x.space) is FormSpace:
        nums = tuple(a - t * b for a, b in zip(x.nums, y.nums))
        dvec = tuple(a - t * b for a, b in zip(x.dvec, y.dvec))
        return _make_lattice_raw(x.space, nums, dvec)
    dx, dy = x.den, y.den
    if dx == dy:
        return _make_ambient(x.space, tuple(a - t * b for a, b in zip(x.nums, y.nums)), dx)
    lcm = dx * dy // math.gcd(dx, dy)
    fx = lcm // dx
    fy = t * (lcm // dy)
    return _make_ambient(x.space, tuple(a * fx - b * fy for a, b in zip(x.nums, y.nums)), lcm)


def inner_product(x: Root, y: Root) -> Fraction:
    """Exact inner product of two roots in the same space."""
    return x.dot(y)


def reflect(x: Root, y: Root) -> Root:
    """x - <x,y> y; requires an integer inner product."""
    t = x.dot(y)
    if t.denominator != 1:
        raise ValueError(f"reflection requires an integer inner product, got {t}")
    return _reflect(x, y, int(t))


class RootSet:
    """Deduplicated finite set of roots sharing one space.

    Elements are kept sorted by a deterministic key so downstream output is
    byte-for-byte reproducible.  Validation checks squared norm 2 for every
    element and integrality of all pairwise inner products.
    """

    __slots__ = ("space", "roots", "_keys", "_flag")

    def __init__(self) -> None:
        raise TypeError("use RootSet.of")

    @classmethod
    def of(cls, space: Space, roots: Iterable[Root], validate: bool = True) -> "RootSet":
        unique: dict = {}
        for i, r in enumerate(roots):
            if r.space is not space and r.space != space:
                raise ValueError(f"vector {i} belongs to a different space")
            if validate and r.norm2() != 2:
                raise ValueError(f"vector {i} has squared norm {r.norm2()}, expected 2")
            unique.setdefault(r.key, r)
        ordered = sorted(unique.values(), key=Root.sort_key)
        if validate:
            n = len(ordered)
            for i in range(n):
                x = ordered[i]
                for j in range(i + 1, n):
                    y = ordered[j]
                    if x.den == 1 and y.den == 1:
                        continue
                    if x.dot(y).denominator != 1:
                        raise ValueError(
                            f"vectors {i} and {j} have non-integer inner product {x.dot(y)}"
                        )
        return cls._assembled(space, ordered)

    @classmethod
    def _assembled(cls, space: Space, ordered: Sequence[Root], flag: Optional[bool] = None) -> "RootSet":
        obj = object.__new__(cls)
        obj.space = space
        obj.roots = tuple(ordered)
        obj._keys = frozenset(r.key for r in obj.roots)
        obj._flag = flag
        return obj

    def keys(self) -> frozenset:
        return self._keys

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    def __contains__(self, r: Root) -> bool:
        return r.key in self._keys and (r.space is self.space or r.space == self.space)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RootSet)
            and self.space == other.space
            and self._keys == other._keys
        )

    def __hash__(self) -> int:
        return hash((self.space, self._keys))

    def __repr__(self) -> str:
        return f"RootSet({len(self.roots)} roots, {self.space!r})"


@dataclass(frozen=True, order=True)
class DynkinType:
    """Irreducible type label A(n>=1), D(n>=2) or E(6..8).

    D2 and D3 are accepted as construction labels; classification only ever
    reports D for rank >= 4, preferring the A-side of the overlaps.
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family == "A":
            ok = self.rank >= 1
        elif self.family == "D":
            ok = self.rank >= 2
        elif self.family == "E":
            ok = self.rank in (6, 7, 8)
        else:
            ok = False
        if not ok:
            raise ValueError(f"unsupported type label {self.family}{self.rank}")

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def ambient_dim(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "D":
            return self.rank
        return 8


@dataclass(frozen=True)
class ReducibleType:
    """Multiset of irreducible types, one per component."""

    parts: tuple[DynkinType, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    @property
    def label(self) -> str:
        return "+".join(t.label for t in self.parts)


_TYPE_RE = re.compile(r"^([ADE])([0-9]+)$")


def parse_type(text: str) -> DynkinType:
    """Parse a label like "A5", "D4" or "E8"."""
    m = _TYPE_RE.match(text.strip())
    if not m:
        raise ValueError(f"unsupported type label {text!r}")
    return DynkinType(m.group(1), int(m.group(2)))


_GEN_CACHE: dict[DynkinType, RootSet] = {}


def gen(t: Union[str, DynkinType]) -> RootSet:
    """Canonical root system of an irreducible type, in ambient coordinates.

    A_n lives on the e_i - e_j hyperplane arrangement in dimension n+1, D_n
    on +-e_i +- e_j in dimension n, and E8 adds the half-integer vectors with
    an even number of minus signs to D8.  E7 and E6 are cut out of E8 by the
    fixed witnesses a = e7 + e8 and b = (-e1-..-e6+e7+e8)/2, which satisfy
    <a, b> = 1; the 126 and 72 count oracles pin the choice down.
    """
    if isinstance(t, str):
        t = parse_type(t)
    cached = _GEN_CACHE.get(t)
    if cached is not None:
        return cached
    if t.family == "A":
        n = t.rank
        space = AmbientSpace(n + 1)
        out = []
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                nums = [0] * (n + 1)
                nums[i], nums[j] = 1, -1
                out.append(_make_ambient_normalized(space, tuple(nums), 1))
                out.append(_make_ambient_normalized(space, tuple(-v for v in nums), 1))
    elif t.family == "D":
        out = _d_roots(t.rank)
    else:
        e8 = _e8_roots()
        if t.rank == 8:
            out = e8
        else:
            space = AmbientSpace(8)
            a = _make_ambient_normalized(space, (0, 0, 0, 0, 0, 0, 1, 1), 1)
            out = [v for v in e8 if _idot(v, a) == 0]
            if t.rank == 6:
                b = _make_ambient_normalized(space, (-1, -1, -1, -1, -1, -1, 1, 1), 2)
                out = [v for v in out if _idot(v, b) == 0]
    result = RootSet.of(out[0].space, out, validate=True)
    _GEN_CACHE[t] = result
    return result


def _d_roots(n: int) -> list[Root]:
    space = AmbientSpace(n)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    nums = [0] * n
                    nums[i], nums[j] = si, sj
                    out.append(_make_ambient_normalized(space, tuple(nums), 1))
    return out


def _e8_roots() -> list[Root]:
    space = AmbientSpace(8)
    out = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (1, -1):
                for sj in (1, -1):
                    nums = [0] * 8
                    nums[i], nums[j] = si, sj
                    out.append(_make_ambient_normalized(space, tuple(nums), 1))
    for mask in range(256):
        nums = tuple(1 if mask & (1 << k) == 0 else -1 for k in range(8))
        if bin(mask).count("1") % 2 == 0:
            out.append(_make_ambient_normalized(space, nums, 2))
    return out


def graph_of(s: RootSet) -> SignedGraph:
    """Simple graph on the roots: edge iff the inner product is nonzero."""
    roots = s.roots
    n = len(roots)
    if n == 0:
        raise ValueError("graph of an empty root set")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if _idot(roots[i], roots[j]) != 0:
                edges.append((i, j, 1))
    return SignedGraph(n, edges)


def signed_graph_of(s: RootSet) -> SignedGraph:
    """Variant of graph_of labelling each edge with the inner product's sign."""
    roots = s.roots
    n = len(roots)
    if n == 0:
        raise ValueError("graph of an empty root set")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            t = _idot(roots[i], roots[j])
            if t:
                edges.append((i, j, 1 if t > 0 else -1))
    return SignedGraph(n, edges)


def components(s: RootSet) -> list[RootSet]:
    """Connected components of graph_of(s), as sub-root-sets."""
    roots = s.roots
    n = len(roots)
    if n == 0:
        return []
    unvisited = set(range(n))
    parts: list[list[Root]] = []
    while unvisited:
        seed = min(unvisited)
        unvisited.discard(seed)
        stack = [seed]
        part = [seed]
        while stack:
            u = stack.pop()
            hit = [v for v in unvisited if _idot(roots[u], roots[v]) != 0]
            for v in hit:
                unvisited.discard(v)
                stack.append(v)
            part.extend(hit)
        parts.append(sorted(part))
    flag = True if s._flag is True else None
    return [
        RootSet._assembled(s.space, [roots[i] for i in part], flag=flag)
        for part in parts
    ]


def is_obtuse(s: RootSet) -> bool:
    """Linearly independent with all distinct pairwise inner products <= 0.

    Independence is decided by the Gram determinant, which also covers the
    intrinsic case (independence modulo the radical of the form).
    """
    roots = s.roots
    n = len(roots)
    if n == 0:
        return True
    for i in range(n):
        for j in range(i + 1, n):
            if _idot(roots[i], roots[j]) > 0:
                return False
    gram = [[_idot(a, b) for b in roots] for a in roots]
    return integer_determinant(gram) != 0


def is_root_system(s: RootSet) -> bool:
    """Nonempty, closed under negation and under x -> x - <x,y> y.

    The result is cached on the (immutable) set; closure() marks its output
    as a root system since reflection-closedness is its loop postcondition.
    """
    if s._flag is not None:
        return s._flag
    result = _root_system_check(s)
    s._flag = result
    return result


def _root_system_check(s: RootSet) -> bool:
    roots = s.roots
    if not roots:
        return False
    keys = s._keys
    for r in roots:
        if (-r).key not in keys:
            return False
    n = len(roots)
    for i in range(n):
        x = roots[i]
        for j in range(i + 1, n):
            y = roots[j]
            t = _idot(x, y)
            if t == 0:
                continue
            if t == 1 or t == -1:
                if _reflect(x, y, t).key not in keys:
                    return False
                if _reflect(y, x, t).key not in keys:
                    return False
            else:
                # Cauchy-Schwarz: |t| = 2 forces y = -x (same key is deduped),
                # and those reflections land on existing negations.
                assert t == -2, f"inner product {t} violates the trichotomy"
    return True


def closure(s: RootSet) -> RootSet:
    """Reflection closure: the smallest superset of S u (-S) closed under
    x -> x - <x,y> y.

    This equals the set of norm-2 vectors of the lattice generated by S; the
    short-vector enumeration in exactlin cross-checks that equality in tests.
    Terminates because the closure injects into the finite grid of inner
    product profiles against the generators.
    """
    if len(s) == 0:
        raise ValueError("closure requires a nonempty set")
    known: dict = {}
    order: list[Root] = []

    def add2(r: Root) -> None:
        if r.key not in known:
            known[r.key] = r
            order.append(r)
            m = -r
            known[m.key] = m
            order.append(m)

    for r in s.roots:
        add2(r)
    i = 0
    while i < len(order):
        x = order[i]
        for j in range(i):
            y = order[j]
            t = _idot(x, y)
            if t == 1 or t == -1:
                add2(_reflect(x, y, t))
                add2(_reflect(y, x, t))
            else:
                assert -2 <= t <= 2, f"inner product {t} out of range"
        i += 1
    ordered = sorted(known.values(), key=Root.sort_key)
    return RootSet._assembled(s.space, ordered, flag=True)


def _require_root_system(s: RootSet) -> None:
    if not is_root_system(s):
        raise ValueError("input is not a simply laced root system")


def find_base(phi: RootSet) -> RootSet:
    """A base of the root system: obtuse, one indecomposable piece per
    component, generating phi over the integers (so closure(base) == phi)."""
    _require_root_system(phi)
    out: list[Root] = []
    for comp in components(phi):
        out.extend(_component_base(comp))
    return RootSet._assembled(phi.space, sorted(out, key=Root.sort_key))


def _component_base(comp: RootSet) -> list[Root]:
    """Base of one irreducible component, by lattice growth.

    Maintain an indecomposable obtuse set S.  While some root lies outside
    the lattice of S, descend from an attachable outside root to the deepest
    root still meeting S negatively; either S grows independently, or the
    extended set is affine and a marks-1 vertex is exchanged away.  Every
    step strictly enlarges the set of roots captured by the lattice.
    """
    roots = list(comp.roots)
    total = len(roots)
    s = [roots[0]]
    captured = -1
    for _ in range(4 * total + 16):
        member_keys = _lattice_members(s, roots)
        if len(member_keys) == total:
            return s
        if len(member_keys) <= captured:
            raise InvariantError("base search stopped making progress")
        captured = len(member_keys)
        p = _attachable_outside(s, roots, member_keys)
        q = _deepest_descent(s, p)
        u = s + [q]
        gram = [[_idot(a, b) for b in u] for a in u]
        if integer_determinant(gram) != 0:
            s = u
        else:
            s = _affine_exchange(u, gram)
    raise InvariantError("base search failed to converge")


def _lattice_members(s: list[Root], roots: list[Root]) -> set:
    """Keys of the roots lying in the integer lattice spanned by S."""
    gram = [[_idot(a, b) for b in s] for a in s]
    inv_num, inv_den = integer_inverse(gram)
    members = set()
    for r in roots:
        b = [_idot(x, r) for x in s]
        coeffs = []
        ok = True
        for row in inv_num:
            num = sum(map(mul, row, b))
            c, rem = divmod(num, inv_den)
            if rem:
                ok = False
                break
            coeffs.append(c)
        if ok and _combination_key(s, coeffs) == r.key:
            members.add(r.key)
    return members


def _combination_key(s: list[Root], coeffs: list[int]):
    """Canonical key of sum(c_i * s_i) without building a Root."""
    space = s[0].space
    if type(space) is FormSpace:
        acc = [0] * space.n
        for c, r in zip(coeffs, s):
            if c:
                for k, v in enumerate(r.dvec):
                    acc[k] += c * v
        return tuple(acc)
    den = 1
    for r in s:
        den = den * r.den // math.gcd(den, r.den)
    acc = [0] * space.dim
    for c, r in zip(coeffs, s):
        if c:
            f = c * (den // r.den)
            for k, v in enumerate(r.nums):
                acc[k] += f * v
    return _make_ambient(space, tuple(acc), den).key


def _attachable_outside(s: list[Root], roots: list[Root], member_keys: set) -> Root:
    """A root outside Z(S) meeting some element of S negatively (negating if
    needed); exists because the component is irreducible."""
    for r in roots:
        if r.key in member_keys:
            continue
        for a in s:
            t = _idot(r, a)
            if t < 0:
                return r
            if t > 0:
                return -r
    raise InvariantError("no attachable root outside the lattice of S")


def _deepest_descent(s: list[Root], p: Root) -> Root:
    """Breadth-first descent r -> r - x over x in S with <r,x> = 1, keeping
    the deepest root that still meets S negatively (ties by sort key)."""
    seen = {p.key}
    frontier = [p]
    best = p
    while frontier:
        nxt = []
        for r in frontier:
            for x in s:
                if _idot(r, x) == 1:
                    z = _reflect(r, x, 1)
                    if z.key not in seen:
                        seen.add(z.key)
                        nxt.append(z)
        qualified = [z for z in nxt if any(_idot(z, x) < 0 for x in s)]
        if qualified:
            best = min(qualified, key=Root.sort_key)
        frontier = nxt
    assert all(_idot(best, x) in (-1, 0) for x in s), "descent left a positive inner product"
    return best


def _affine_exchange(u: list[Root], gram: list[list[int]]) -> list[Root]:
    """Replace the dependent obtuse set U = S + [q] by an independent one.

    Gram(U) equals 2I - A for the unsigned graph on U, so its kernel is
    spanned by the marks vector alpha; the vertex with alpha = 1 whose
    removal keeps the graph connected (lowest index first) is generated by
    the rest and can be dropped.
    """
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] not in (0, -1):
                raise InvariantError(f"extended set is not obtuse: gram[{i}][{j}] = {gram[i][j]}")
    basis = kernel_basis(RatMatrix(gram))
    if len(basis) != 1:
        raise InvariantError(f"affine kernel has dimension {len(basis)}, expected 1")
    alpha = primitive_integer_vector(basis[0])
    if any(a <= 0 for a in alpha) or min(alpha) != 1:
        raise InvariantError(f"affine marks are not positive with minimum 1: {alpha}")
    if alpha[-1] == 1:
        raise InvariantError("the freshly attached root cannot carry mark 1")
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] == -1:
                adj[i].add(j)
                adj[j].add(i)
    for idx in range(n - 1):
        if alpha[idx] == 1 and connected_without(adj, idx):
            return u[:idx] + u[idx + 1 :]
    raise InvariantError("no marks-1 vertex keeps the graph connected")


def _graph_of_roots(roots: Sequence[Root]) -> SignedGraph:
    n = len(roots)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if _idot(roots[i], roots[j]) != 0:
                edges.append((i, j, 1))
    return SignedGraph(n, edges)


def _base_type(base: Sequence[Root]) -> DynkinType:
    st = smith_classify(_graph_of_roots(base))
    if st.kind != "finite":
        raise InvariantError(f"base graph classified as {st.label}")
    return DynkinType(st.family, st.rank)


def classify(phi: RootSet) -> Union[DynkinType, ReducibleType]:
    """Type of a root system: a DynkinType when irreducible, otherwise the
    multiset of component types."""
    _require_root_system(phi)
    types = sorted(_base_type(_component_base(c)) for c in components(phi))
    if len(types) == 1:
        return types[0]
    return ReducibleType(tuple(types))


@dataclass(frozen=True)
class Isometry:
    """Exact linear map from a root set's span into a canonical ambient space.

    The matrix has one column per input coordinate (ambient coordinate, or
    generator of the form); it preserves inner products on the span and
    annihilates its orthogonal complement.
    """

    matrix: tuple[tuple[Fraction, ...], ...]
    domain: Space
    codomain: AmbientSpace

    def apply(self, r: Root) -> Root:
        if r.space is not self.domain and r.space != self.domain:
            raise ValueError("root does not belong to the isometry's domain")
        vec = r.nums
        d = r.den
        out = [sum(map(mul, row, vec)) for row in self.matrix]
        if d == 1:
            return ambient_root(self.codomain, out)
        return ambient_root(self.codomain, [Q(x, d) for x in out])

    def as_rat_matrix(self) -> RatMatrix:
        return RatMatrix(self.matrix)


def _canonical_base_order(base: Sequence[Root]) -> list[Root]:
    """Vertices of a base's Dynkin graph in canonical order.

    Paths run endpoint to endpoint starting from the smaller sort key; forks
    list the branch vertex first, then the legs sorted by length (ties by the
    legs' sort keys), each from the branch outward.  Two bases of the same
    type therefore list Gram-identical sequences.
    """
    n = len(base)
    if n == 1:
        return list(base)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if _idot(base[i], base[j]) != 0:
                adj[i].add(j)
                adj[j].add(i)
    degs = [len(a) for a in adj]
    if max(degs) <= 2:
        ends = [i for i in range(n) if degs[i] <= 1]
        start = min(ends, key=lambda i: base[i].sort_key())
        order = [start]
        prev, cur = -1, start
        while len(order) < n:
            nxt = next(w for w in adj[cur] if w != prev)
            order.append(nxt)
            prev, cur = cur, nxt
        return [base[i] for i in order]
    center = next(i for i in range(n) if degs[i] == 3)
    legs: list[list[int]] = []
    for first in adj[center]:
        leg = [first]
        prev, cur = center, first
        while degs[cur] == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            leg.append(nxt)
            prev, cur = cur, nxt
        legs.append(leg)
    legs.sort(key=lambda leg: (len(leg), [base[i].sort_key() for i in leg]))
    order = [center]
    for leg in legs:
        order.extend(leg)
    return [base[i] for i in order]


_CANON_ORDERED: dict[DynkinType, list[Root]] = {}


def _canonical_ordered_base(t: DynkinType) -> list[Root]:
    cached = _CANON_ORDERED.get(t)
    if cached is None:
        cached = _canonical_base_order(_component_base(gen(t)))
        _CANON_ORDERED[t] = cached
    return cached


def isometry_to_canonical(omega: RootSet) -> tuple[DynkinType, Isometry]:
    """Type of an irreducible root system plus an exact Gram-preserving map
    carrying it onto the canonical model gen(type), checked root by root."""
    _require_root_system(omega)
    if len(components(omega)) != 1:
        raise ValueError("isometry requires an irreducible root system")
    base = _component_base(omega)
    t = _base_type(base)
    ordered = _canonical_base_order(base)
    target = _canonical_ordered_base(t)
    m = len(ordered)
    gram = [[_idot(a, b) for b in ordered] for a in ordered]
    tgram = [[_idot(a, b) for b in target] for a in target]
    if gram != tgram:
        raise InvariantError("canonically ordered bases have different Gram matrices")
    iso = _build_isometry(omega.space, ordered, target, t)
    expected = gen(t).keys()
    mapped = {iso.apply(r).key for r in omega.roots}
    if mapped != expected:
        raise InvariantError("mapped root system does not equal the canonical model")
    return t, iso


def _build_isometry(domain: Space, ordered: list[Root], target: list[Root], t: DynkinType) -> Isometry:
    m = len(ordered)
    gram = [[_idot(a, b) for b in ordered] for a in ordered]
    inv_num, inv_den = integer_inverse(gram)
    if type(domain) is FormSpace:
        in_dim = domain.n
        b_rows = [[Q(v) for v in r.dvec] for r in ordered]
    else:
        in_dim = domain.dim
        b_rows = [list(r.coords) for r in ordered]
    # coords -> base coefficients: Ginv @ B
    coeff_rows = [
        [sum(Q(inv_num[a][j]) * b_rows[j][k] for j in range(m)) / inv_den for k in range(in_dim)]
        for a in range(m)
    ]
    codomain = AmbientSpace(t.ambient_dim)
    y_cols = [r.coords for r in target]
    matrix = tuple(
        tuple(sum(y_cols[a][i] * coeff_rows[a][k] for a in range(m)) for k in range(in_dim))
        for i in range(codomain.dim)
    )
    return Isometry(matrix=matrix, domain=domain, codomain=codomain)


def signed_permute(s: RootSet, perm: Sequence[int], signs: Sequence[int]) -> RootSet:
    """Image of an ambient root set under a signed coordinate permutation.

    new_coords[i] = signs[i] * old_coords[perm[i]].  This is an isometry of
    the ambient space, so inner products are preserved and validation is
    skipped; the image of a root system is again a root system.
    """
    if type(s.space) is not AmbientSpace:
        raise ValueError("signed permutations apply to ambient root sets")
    dim = s.space.dim
    if sorted(perm) != list(range(dim)):
        raise ValueError("perm must be a permutation of the coordinates")
    if len(signs) != dim or any(sg not in (1, -1) for sg in signs):
        raise ValueError("signs must be +-1 per coordinate")
    out = []
    for r in s.roots:
        nums = tuple(signs[i] * r.nums[perm[i]] for i in range(dim))
        out.append(_make_ambient_normalized(s.space, nums, r.den))
    flag = True if s._flag is True else None
    return RootSet._assembled(s.space, sorted(out, key=Root.sort_key), flag=flag)
