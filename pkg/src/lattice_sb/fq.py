"""Prime-field linear algebra and the stock lattices.

Subspaces of F_q^n are canonicalized as reduced row echelon matrices, so
equality of subspaces is equality of values.  On top of that sit the
constructors for the projective lattice Sub(F_q^n), the power-set lattice,
and the four small named example lattices (M3, N5, L1, L2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .counting import gaussian
from .lattice import (
    CapExceeded,
    Lattice,
    LatticeError,
    build_lattice,
    element_cap,
    iter_bits,
    sublattice_closure,
    with_names,
)

NAMED_LATTICES = ("M3", "N5", "L1", "L2")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _check_field(q: int):
    if not is_prime(q):
        raise ValueError(f"q must be a prime, got {q}")


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^ambient, stored as its canonical RREF basis rows."""

    q: int
    ambient: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)


def _rref_raw(rows: list[list[int]], width: int, q: int) -> list[list[int]]:
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), -1)
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, q)
        if inv != 1:
            rows[r] = [(x * inv) % q for x in rows[r]]
        lead = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], lead)]
        r += 1
        if r == len(rows):
            break
    return rows[:r]


def rref(rows: Iterable[Sequence[int]], ambient: int, q: int) -> Subspace:
    """Canonical reduced row echelon form of a row space.

    Args:
        rows: spanning vectors (any number, any order; reduced mod q).
        ambient: vector length n.
        q: prime field size.

    Returns:
        The spanned Subspace; zero rows vanish, so the zero subspace has an
        empty row tuple.
    """
    _check_field(q)
    mat = []
    for row in rows:
        row = [int(x) % q for x in row]
        if len(row) != ambient:
            raise ValueError(f"row length {len(row)} != ambient {ambient}")
        mat.append(row)
    out = _rref_raw(mat, ambient, q)
    return Subspace(q, ambient, tuple(tuple(r) for r in out))


def zero_subspace(ambient: int, q: int) -> Subspace:
    return rref([], ambient, q)


def full_space(ambient: int, q: int) -> Subspace:
    eye = [[1 if j == i else 0 for j in range(ambient)] for i in range(ambient)]
    return rref(eye, ambient, q)


def reduce_vector(sub: Subspace, vec: Sequence[int]) -> tuple[int, ...]:
    """Residue of vec after elimination against the subspace basis."""
    v = [int(x) % sub.q for x in vec]
    if len(v) != sub.ambient:
        raise ValueError("vector length mismatch")
    for row in sub.rows:
        piv = next(i for i, x in enumerate(row) if x)
        if v[piv]:
            f = v[piv]
            v = [(a - f * b) % sub.q for a, b in zip(v, row)]
    return tuple(v)


def contains_vector(sub: Subspace, vec: Sequence[int]) -> bool:
    return not any(reduce_vector(sub, vec))


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    """A is a subspace of B."""
    _check_same_space(a, b)
    return all(contains_vector(b, row) for row in a.rows)


def _check_same_space(a: Subspace, b: Subspace):
    if a.q != b.q or a.ambient != b.ambient:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_space(a, b)
    return rref(list(a.rows) + list(b.rows), a.ambient, a.q)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce [[x|x] for x in A] + [[y|0] for y in B]; rows with a
    zero left block carry a basis of the intersection in the right block."""
    _check_same_space(a, b)
    n, q = a.ambient, a.q
    big = [list(r) + list(r) for r in a.rows] + [list(r) + [0] * n for r in b.rows]
    red = _rref_raw(big, 2 * n, q)
    inter = [r[n:] for r in red if not any(r[:n])]
    return rref(inter, n, q)


def rank(rows: Iterable[Sequence[int]], ambient: int, q: int) -> int:
    return rref(rows, ambient, q).dim


def enumerate_grassmannian(n: int, k: int, q: int) -> Iterator[Subspace]:
    """All k-dim subspaces of F_q^n, one canonical RREF matrix each.

    Deterministic order: pivot column sets ascending lexicographically, free
    entries counting up in base q.
    """
    _check_field(q)
    if n < 0:
        raise ValueError("n must be >= 0")
    if k < 0 or k > n:
        return
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivot_set]
        base = [[0] * n for _ in range(k)]
        for i, p in enumerate(pivots):
            base[i][p] = 1
        for vals in product(range(q), repeat=len(free)):
            rows = [row[:] for row in base]
            for (i, j), val in zip(free, vals):
                rows[i][j] = val
            yield Subspace(q, n, tuple(tuple(r) for r in rows))


def all_subspaces(n: int, q: int) -> Iterator[Subspace]:
    """Every subspace of F_q^n, dimension-ascending; matches projective ids."""
    for k in range(n + 1):
        yield from enumerate_grassmannian(n, k, q)


# --- text format -------------------------------------------------------------


def subspace_to_text(sub: Subspace) -> str:
    """Rows as digit strings joined by '/'; the zero subspace is one zero row."""
    if sub.q > 7:
        raise ValueError("text format supports q <= 7")
    if sub.dim == 0:
        return "0" * sub.ambient
    return "/".join("".join(str(x) for x in row) for row in sub.rows)


def subspace_from_text(text: str, ambient: int, q: int) -> Subspace:
    rows = []
    for part in text.strip().split("/"):
        if len(part) != ambient or not part.isdigit():
            raise ValueError(f"bad subspace row {part!r} (need {ambient} digits)")
        row = [int(ch) for ch in part]
        if any(x >= q for x in row):
            raise ValueError(f"entry out of range for q={q} in row {part!r}")
        rows.append(row)
    return rref(rows, ambient, q)


# --- lattice constructors ----------------------------------------------------


def build_powerset_lattice(n: int, max_elements: int | None = None) -> Lattice:
    """The lattice of subsets of {1..n}; element ids are subset bitmasks."""
    if n < 0 or n > 20:
        raise ValueError("power-set lattice supported for 0 <= n <= 20")
    size = 1 << n
    cap = element_cap(max_elements)
    if size > cap:
        raise CapExceeded(
            f"power-set lattice on {n} points has {size} elements; cap is {cap} "
            f"(raise via max_elements or LATTICE_SB_MAX_ELEMENTS)"
        )
    names = ["{" + ",".join(str(i + 1) for i in iter_bits(s)) + "}" for s in range(size)]
    covers = [(s, s | (1 << i)) for s in range(size) for i in range(n) if not (s >> i) & 1]
    return build_lattice(names, covers)


def build_projective_lattice(n: int, q: int, max_elements: int | None = None) -> Lattice:
    """The lattice of all subspaces of F_q^n, ordered by inclusion.

    Ids follow all_subspaces(n, q) order, so height equals dimension and the
    name of an element is its subspace text form.
    """
    _check_field(q)
    if n < 1:
        raise ValueError("ambient dimension must be >= 1")
    size = sum(gaussian(n, k, q) for k in range(n + 1))
    cap = element_cap(max_elements)
    if size > cap:
        raise CapExceeded(
            f"Sub(F_{q}^{n}) has {size} elements; cap is {cap} "
            f"(raise via max_elements or LATTICE_SB_MAX_ELEMENTS)"
        )
    subs = list(all_subspaces(n, q))
    names = [subspace_to_text(s) for s in subs]
    by_dim: dict[int, list[int]] = {}
    for i, s in enumerate(subs):
        by_dim.setdefault(s.dim, []).append(i)
    covers = []
    for k in range(n):
        for a in by_dim.get(k, ()):
            for b in by_dim.get(k + 1, ()):
                if subspace_leq(subs[a], subs[b]):
                    covers.append((a, b))
    return build_lattice(names, covers)


def subspace_id(lat: Lattice, sub: Subspace) -> int:
    """Element id of a subspace inside a built projective lattice."""
    return lat.name_to_id[subspace_to_text(sub)]


def _vec(code: int, n: int) -> tuple[int, ...]:
    """Integer-coded F_2 vector: bit i of code is coordinate i."""
    return tuple((code >> i) & 1 for i in range(n))


def build_named_lattice(name: str, max_elements: int | None = None) -> Lattice:
    """One of the stock examples: M3, N5, L1, L2.

    M3 is Sub(F_2^2) with the classic labels; L2 is the seven-subspace
    sublattice of Sub(F_2^3) generated by the lines <1>, <2>, <3> and the
    planes <1,3>, <3,5> (integer-coded vectors), with their join as top.
    """
    key = name.upper()
    if key == "M3":
        base = build_projective_lattice(2, 2, max_elements)
        rename = {"00": "O", "01": "A", "10": "B", "11": "C", "10/01": "I"}
        return with_names(base, [rename[nm] for nm in base.names])
    if key == "N5":
        return build_lattice(["d", "a", "b", "c", "u"], [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    if key == "L1":
        return build_lattice(["{}", "{1}", "{1,2}", "{1,2,3}"], [(0, 1), (1, 2), (2, 3)])
    if key == "L2":
        base = build_projective_lattice(3, 2, max_elements)
        seeds = [
            zero_subspace(3, 2),
            rref([_vec(1, 3)], 3, 2),
            rref([_vec(2, 3)], 3, 2),
            rref([_vec(3, 3)], 3, 2),
            rref([_vec(1, 3), _vec(3, 3)], 3, 2),
            rref([_vec(3, 3), _vec(5, 3)], 3, 2),
        ]
        sub = sublattice_closure(base, [subspace_id(base, s) for s in seeds])
        rename = {
            "000": "0",
            "100": "<1>",
            "010": "<2>",
            "110": "<3>",
            "100/010": "<1,3>",
            "101/011": "<3,5>",
            "100/010/001": "V",
        }
        return with_names(sub, [rename[nm] for nm in sub.names])
    raise LatticeError(f"unknown lattice name: {name!r} (expected one of {', '.join(NAMED_LATTICES)})")
