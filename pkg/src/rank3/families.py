"""Constructors for the strongly regular graph families shipped here.

Every family is a Cayley graph on the additive group of a vector space over
GF(p) (or, for ``hamming2``, a direct product construction): vertices are the
p**dim vectors under the little-endian digit indexing of module ``gf``, and
x ~ y exactly when x - y lies in a fixed symmetric connection set.  The
families differ only in how that connection set is cut out:

* ``paley`` / ``peisert`` / ``van_lint_schrijver`` -- power-residue cosets in
  a finite field (one-dimensional).
* ``affine_polar`` -- zeros of a nondegenerate quadratic form.
* ``bilinear_forms`` -- 2 x m matrices of rank 1.
* ``alternating_forms`` -- 5 x 5 alternating matrices of rank 2 over GF(2).
* ``affine_orbital_graph`` -- an orbit of an explicit matrix group with
  exactly two orbits on nonzero vectors.

Each family also has a companion "known automorphisms" generator set (a
transitive permutation group acting on the graph) used by the catalog to
cross-check rank and subdegrees independently of the Aut solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy

from .gf import FieldElement, FiniteField, make_field, power_residue_classes
from .graphs import DenseGraph
import importlib.resources

from .permgrp import (
    DEFAULT_SL25_SEED,
    GeneratorSet,
    MatrixGroupSpec,
    Permutation,
    affine_perms,
    central_product_with_scalars,
    find_sl25_in_gl2,
    linear_perms,
    normalizer_in_gl2,
    orbit_partition,
    parse_matrix_spec,
    read_matrix_spec,
    schreier_sims,
    semilinear_perms,
)

__all__ = [
    "AsymmetricConnectionSet",
    "ZeroInSet",
    "BadCongruence",
    "OrderCondition",
    "Unsupported",
    "WrongOrbitCount",
    "AsymmetricOrbit",
    "VectorSpace",
    "ConnectionSet",
    "FamilyId",
    "cayley_graph",
    "paley",
    "peisert",
    "van_lint_schrijver",
    "hamming2",
    "affine_polar",
    "bilinear_forms",
    "alternating_forms",
    "affine_orbital_graph",
    "affine_polar_group",
    "bilinear_forms_group",
    "alternating_forms_group",
    "hamming2_group",
    "quaternion_normalizer_spec",
    "sl25_with_scalars_spec",
    "sl23_with_scalars_spec",
    "extraspecial_normalizer_spec",
    "parse_descriptor",
    "format_descriptor",
    "family_graph",
    "family_group",
    "family_matrix_spec",
    "FAMILY_TAGS",
]


# -- errors --------------------------------------------------------------------


class AsymmetricConnectionSet(ValueError):
    """The connection set is not closed under negation."""


class ZeroInSet(ValueError):
    """The connection set contains the zero vector."""


class BadCongruence(ValueError):
    """The field order fails the congruence the family needs."""


class OrderCondition(ValueError):
    """The multiplicative-order precondition on (p, e) fails."""


class Unsupported(ValueError):
    """The requested parameters are outside what this artifact ships."""


class WrongOrbitCount(ValueError):
    """The supplied matrix group does not have exactly 2 orbits on V \\ {0}."""

    def __init__(self, count: int):
        self.count = count
        super().__init__(
            f"group has {count} orbits on nonzero vectors, need exactly 2"
        )


class AsymmetricOrbit(ValueError):
    """The selected orbit is not closed under v -> -v."""


# -- connection sets and the generic Cayley construction ------------------------


@dataclass(frozen=True)
class VectorSpace:
    """The vector space GF(p)**dim with vectors indexed little-endian base p.

    A vector (c_0, ..., c_{dim-1}) has index sum(c_i * p**i).  For a field
    GF(p**d) this agrees with the element indexing of module ``gf``, and for a
    coordinate space over GF(q), q = p**d, concatenating the coefficient
    vectors coordinate by coordinate agrees with indexing by
    sum(coord_index_j * q**j).
    """

    p: int
    dim: int

    def __post_init__(self) -> None:
        if self.p < 2 or not sympy.isprime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.dim < 1:
            raise ValueError(f"dim = {self.dim} must be >= 1")

    @property
    def size(self) -> int:
        return self.p**self.dim


def _space_shape(space) -> tuple[int, int]:
    """(p, dim) of a VectorSpace or a FiniteField."""
    if isinstance(space, FiniteField):
        return space.p, space.d
    if isinstance(space, VectorSpace):
        return space.p, space.dim
    raise TypeError(f"expected FiniteField or VectorSpace, got {type(space)!r}")


@dataclass(frozen=True)
class ConnectionSet:
    """A symmetric set S of nonzero vectors, given by their integer indices.

    ``field`` is either a FiniteField (one-dimensional families) or a
    VectorSpace.  Invariants -- S = -S and 0 not in S -- are enforced by
    cayley_graph, which reports AsymmetricConnectionSet / ZeroInSet.
    """

    field: FiniteField | VectorSpace
    members: frozenset[int]

    @property
    def size(self) -> int:
        p, dim = _space_shape(self.field)
        return p**dim


def _digits(n: int, p: int, dim: int) -> np.ndarray:
    """(n, dim) array: row i = little-endian base-p digits of i."""
    out = np.empty((n, dim), dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    for j in range(dim):
        idx, out[:, j] = np.divmod(idx, p)
    return out


def _negate_indices(members: np.ndarray, p: int, dim: int) -> np.ndarray:
    """Indices of -v for each vector index v."""
    pv = p ** np.arange(dim, dtype=np.int64)
    digs = np.empty((len(members), dim), dtype=np.int64)
    idx = members.astype(np.int64).copy()
    for j in range(dim):
        idx, digs[:, j] = np.divmod(idx, p)
    return ((p - digs) % p) @ pv


def cayley_graph(cs: ConnectionSet) -> DenseGraph:
    """The Cayley graph of GF(p)**dim with connection set cs.members.

    x ~ y iff x - y is in the set; the output is |S|-regular and
    vertex-transitive under translations.
    """
    p, dim = _space_shape(cs.field)
    n = p**dim
    members = np.array(sorted(cs.members), dtype=np.int64)
    if len(members) == 0:
        raise ValueError("connection set is empty")
    if members[0] == 0:
        raise ZeroInSet("connection set contains the zero vector")
    if members[0] < 0 or members[-1] >= n:
        raise ValueError(f"member index out of range [0, {n})")
    neg = _negate_indices(members, p, dim)
    if set(neg.tolist()) != set(members.tolist()):
        raise AsymmetricConnectionSet("connection set is not closed under negation")

    indicator = np.zeros(n, dtype=bool)
    indicator[members] = True
    digs = _digits(n, p, dim)
    pv = p ** np.arange(dim, dtype=np.int64)
    adj = np.zeros((n, n), dtype=bool)
    chunk = max(1, (1 << 22) // max(n * dim, 1))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        diff = (digs[lo:hi, None, :] - digs[None, :, :]) % p
        adj[lo:hi] = indicator[diff @ pv]
    return DenseGraph(adj)


# -- helpers shared by the field-coordinate families -----------------------------


def _split_prime_power(q: int) -> tuple[int, int]:
    """q = p**d with p prime, else ValueError."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    [(p, d)] = fac.items()
    return int(p), int(d)


@lru_cache(maxsize=None)
def _field_tables(q: int) -> tuple[FiniteField, np.ndarray, np.ndarray, np.ndarray]:
    """(field, add, sub, mul) index tables for GF(q), each q x q int64."""
    p, d = _split_prime_power(q)
    field = make_field(p, d)
    els = [field.from_index(i) for i in range(q)]
    add = np.empty((q, q), dtype=np.int64)
    sub = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            add[i, j] = (a + b).index
            sub[i, j] = (a - b).index
            mul[i, j] = (a * b).index
    return field, add, sub, mul


def _anisotropic_pair(q: int) -> tuple[int, int]:
    """Smallest (a, b) by index order with x**2 + a*x + b irreducible over GF(q).

    u**2 + a*u*v + b*v**2 is then an anisotropic binary quadratic form (the
    norm form of GF(q**2) over GF(q) up to equivalence).
    """
    field, add, _, mul = _field_tables(q)
    for a in range(q):
        for b in range(1, q):
            if all(add[add[mul[x, x], mul[a, x]], b] != 0 for x in range(q)):
                return a, b
    raise AssertionError("no irreducible monic quadratic found")  # pragma: no cover


# -- one-dimensional families ----------------------------------------------------


def _residue_class_indices(field: FiniteField, e: int, which: int) -> frozenset[int]:
    cls = power_residue_classes(field, e)[which]
    return frozenset(x.index for x in cls)


def paley(q: int) -> DenseGraph:
    """Paley graph: vertices GF(q), x ~ y iff x - y is a nonzero square.

    Requires q = 1 (mod 4) so that -1 is a square and the set is symmetric.
    """
    p, d = _split_prime_power(q)
    if q % 4 != 1:
        raise BadCongruence(f"q = {q} is not 1 mod 4; the squares are not symmetric")
    field = make_field(p, d)
    members = _residue_class_indices(field, 2, 0)
    return cayley_graph(ConnectionSet(field, members))


def peisert(q: int) -> DenseGraph:
    """Peisert graph: vertices GF(p**d), connection set C + C*omega, C = <omega**4>.

    Requires p = 3 (mod 4) and d even (so q = 1 mod 8 ... in particular 4
    divides q - 1 and -1 lands in C).
    """
    p, d = _split_prime_power(q)
    if p % 4 != 3 or d % 2 != 0:
        raise BadCongruence(
            f"q = {q} = {p}**{d} needs p = 3 mod 4 and even exponent"
        )
    field = make_field(p, d)
    members = _residue_class_indices(field, 4, 0) | _residue_class_indices(field, 4, 1)
    return cayley_graph(ConnectionSet(field, members))


def van_lint_schrijver(q: int, e: int) -> DenseGraph:
    """Van Lint-Schrijver cyclotomic graph: connection set C = <omega**e>.

    Preconditions: p and e prime, e > 2, p has multiplicative order e - 1
    modulo e, and q = p**(k(e-1)); additionally (q-1)/e must be even (or
    p = 2) so that C = -C.
    """
    if e == 2:
        raise Unsupported("e = 2 is the Paley construction; call paley(q)")
    if e < 2 or not sympy.isprime(e):
        raise ValueError(f"e = {e} must be prime")
    p, d = _split_prime_power(q)
    if p % e == 0 or sympy.n_order(p, e) != e - 1:
        raise OrderCondition(
            f"p = {p} must have multiplicative order {e - 1} modulo e = {e}"
        )
    if d % (e - 1) != 0:
        raise OrderCondition(
            f"q = {q} = {p}**{d}: the exponent must be a multiple of e - 1 = {e - 1}"
        )
    if p != 2 and ((q - 1) // e) % 2 != 0:
        raise AsymmetricConnectionSet(
            f"(q-1)/e = {(q - 1) // e} is odd and p is odd: C is not symmetric"
        )
    field = make_field(p, d)
    members = _residue_class_indices(field, e, 0)
    return cayley_graph(ConnectionSet(field, members))


# -- Hamming H(2, m) -------------------------------------------------------------


def hamming2(m: int) -> DenseGraph:
    """Hamming graph H(2, m) = m x m rook's graph: vertices are ordered pairs
    (i, j) in [m]**2 (index i*m + j), adjacent iff they agree in exactly one
    coordinate.  SRG(m**2, 2(m-1), m-2, 2)."""
    if m < 2:
        raise ValueError(f"m = {m} must be >= 2")
    n = m * m
    i = np.arange(n) // m
    j = np.arange(n) % m
    adj = (i[:, None] == i[None, :]) ^ (j[:, None] == j[None, :])
    return DenseGraph(adj)


def hamming2_group(m: int) -> GeneratorSet:
    """The natural automorphisms of hamming2(m): (S_m x S_m) : 2, acting on
    pairs (i, j) |-> (g(i), h(j)) plus the coordinate swap.  Transitive of
    rank 3 with subdegrees 2(m-1) and (m-1)**2."""
    if m < 2:
        raise ValueError(f"m = {m} must be >= 2")
    n = m * m
    i = np.arange(n) // m
    j = np.arange(n) % m
    cyc = (np.arange(m) + 1) % m
    swp = np.arange(m)
    swp[[0, 1]] = [1, 0]
    gens = [
        cyc[i] * m + j,
        swp[i] * m + j,
        i * m + cyc[j],
        i * m + swp[j],
        j * m + i,
    ]
    return GeneratorSet(n, tuple(Permutation(g.astype(np.int32)) for g in gens))


# -- affine polar graphs VO(2m, eps, q) -------------------------------------------


def _polar_form_rows(m: int, q: int, epsilon: int) -> tuple[list[tuple[int, int, int]], int]:
    """The quadratic form as sparse upper-triangular (i, j, coeff-index) terms.

    Plus type: x0*x1 + x2*x3 + ... ; minus type replaces the last hyperbolic
    pair with the anisotropic u**2 + a*u*v + b*v**2.
    Returns (terms, dim)."""
    dim = 2 * m
    one = 1  # index of the field element 1
    terms = []
    pairs = m if epsilon == 1 else m - 1
    for t in range(pairs):
        terms.append((2 * t, 2 * t + 1, one))
    if epsilon == -1:
        a, b = _anisotropic_pair(q)
        u, v = dim - 2, dim - 1
        terms.append((u, u, one))
        if a:
            terms.append((u, v, a))
        terms.append((v, v, b))
    return terms, dim


def _evaluate_form(coords: np.ndarray, terms, q: int) -> np.ndarray:
    """Form values (as GF(q) indices) for each row of coordinate indices."""
    _, add, _, mul = _field_tables(q)
    vals = np.zeros(len(coords), dtype=np.int64)
    for i, j, c in terms:
        term = mul[coords[:, i], coords[:, j]]
        if c != 1:
            term = mul[c, term]
        vals = add[vals, term]
    return vals


def affine_polar(m: int, q: int, epsilon: int) -> DenseGraph:
    """Affine polar graph VO(2m, epsilon, q): vertices = GF(q)**(2m),
    x ~ y iff Q(x - y) = 0 (x != y), for the standard quadratic form of type
    epsilon (+1 hyperbolic, -1 with an anisotropic norm-form plane)."""
    if m < 2:
        raise ValueError(f"m = {m} must be >= 2")
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    p, d = _split_prime_power(q)
    dim = 2 * m
    n = q**dim
    if n > 4096:
        raise ValueError(f"q**(2m) = {n} exceeds the 4096-vertex construction cap")
    terms, _ = _polar_form_rows(m, q, epsilon)
    coords = _digits(n, q, dim)
    vals = _evaluate_form(coords, terms, q)
    members = frozenset(np.flatnonzero((vals == 0) & (np.arange(n) != 0)).tolist())
    return cayley_graph(ConnectionSet(VectorSpace(p, d * dim), members))


def _general_orthogonal_order(m: int, q: int, epsilon: int) -> int:
    """|GO(2m, epsilon, q)| = 2 q^(m(m-1)) (q^m - eps) prod_{i<m} (q^(2i) - 1)."""
    o = 2 * q ** (m * (m - 1)) * (q**m - epsilon)
    for i in range(1, m):
        o *= q ** (2 * i) - 1
    return o


@lru_cache(maxsize=None)
def affine_polar_group(m: int, q: int, epsilon: int) -> MatrixGroupSpec:
    """Generators of the full similitude group of the affine_polar form as a
    matrix group over GF(q) (prime q only): the isometry group GO for q = 2,
    or GO extended by a similitude with primitive multiplier for odd q (order
    |GO| * (q-1)), which fuses the nonsingular point classes.  The group has
    exactly 2 orbits on nonzero vectors: singular and nonsingular.

    Isometry generators are orthogonal transvections x |-> x + B(x, v) v
    (q = 2) or reflections x |-> x - (B(x, v)/Q(v)) v (q odd) for a seeded
    random sample of nonsingular v, grown until the group order matches the
    closed-form target.
    """
    if m < 2:
        raise ValueError(f"m = {m} must be >= 2")
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    p, d = _split_prime_power(q)
    if d != 1:
        raise Unsupported("the polar group construction ships for prime q only")
    if (m, q, epsilon) == (2, 2, 1):
        # the one case where hyperplane transvections generate a proper subgroup
        raise Unsupported("the isometry group of the (m, q, eps) = (2, 2, +1) form "
                          "is not generated by its transvections")
    terms, dim = _polar_form_rows(m, q, epsilon)
    n = q**dim
    upper = np.zeros((dim, dim), dtype=np.int64)
    for i, j, c in terms:
        upper[i, j] = c
    gram = (upper + upper.T) % p

    def form(vecs: np.ndarray) -> np.ndarray:
        return np.einsum("ki,ij,kj->k", vecs, upper, vecs) % p

    coords = _digits(n, p, dim)
    vals = form(coords)
    eye = np.eye(dim, dtype=np.int64)

    # projective representatives of nonsingular vectors (first nonzero
    # coordinate = 1), in a seeded random order so early picks span the space
    reps = []
    for vi in np.flatnonzero(vals != 0):
        v = coords[vi]
        if p == 2 or v[np.flatnonzero(v)[0]] == 1:
            reps.append(int(vi))
    rng = np.random.default_rng(0)
    rng.shuffle(reps)

    def isometry(vi: int) -> np.ndarray:
        v = coords[vi]
        coeff = 1 if p == 2 else (-pow(int(vals[vi]), -1, p)) % p
        return (eye + coeff * np.outer(v, gram @ v)) % p

    extra: list[np.ndarray] = []
    target = _general_orthogonal_order(m, q, epsilon)
    if p > 2:
        lam = int(sympy.primitive_root(p))
        target *= p - 1
        sim = np.eye(dim, dtype=np.int64)
        pairs = m if epsilon == 1 else m - 1
        for t in range(pairs):
            sim[2 * t, 2 * t] = lam
        if epsilon == -1:
            a, b = _anisotropic_pair(q)
            blk = next(
                (
                    np.array([[aa, bb], [cc, dd]], dtype=np.int64)
                    for aa in range(p)
                    for bb in range(p)
                    for cc in range(p)
                    for dd in range(p)
                    if (aa * aa + a * aa * cc + b * cc * cc) % p == lam
                    and (2 * aa * bb + a * (aa * dd + bb * cc) + 2 * b * cc * dd) % p
                    == (lam * a) % p
                    and (bb * bb + a * bb * dd + b * dd * dd) % p == (lam * b) % p
                ),
                None,
            )
            if blk is None:  # pragma: no cover
                raise AssertionError("no similitude block found")
            sim[dim - 2 :, dim - 2 :] = blk
        if not np.array_equal(
            form((coords @ sim.T) % p), (lam * vals) % p
        ):  # pragma: no cover
            raise AssertionError("similitude check failed")
        extra.append(sim)

    count = 3 * dim
    while True:
        gens = [isometry(vi) for vi in reps[:count]] + extra
        spec = MatrixGroupSpec(p, dim, _as_gen_tuples(gens))
        if schreier_sims(linear_perms(spec)).order == target:
            return spec
        if count >= len(reps):
            raise AssertionError(
                f"hyperplane isometries did not reach order {target} "
                f"for (m, q, epsilon) = ({m}, {q}, {epsilon})"
            )  # pragma: no cover
        count = min(2 * count, len(reps))


def _as_gen_tuples(gens: list[np.ndarray]) -> tuple:
    return tuple(tuple(tuple(int(x) for x in row) for row in g) for g in gens)


# -- bilinear and alternating forms graphs ----------------------------------------


def bilinear_forms(q: int, m: int) -> DenseGraph:
    """Bilinear forms graph H_q(2, m): vertices = 2 x m matrices over GF(q)
    (row-major coordinate order), A ~ B iff rank(A - B) = 1."""
    if m < 2:
        raise ValueError(f"m = {m} must be >= 2")
    p, d = _split_prime_power(q)
    dim = 2 * m
    n = q**dim
    if n > 4096:
        raise ValueError(f"q**(2m) = {n} exceeds the 4096-vertex construction cap")
    _, _, sub, mul = _field_tables(q)
    coords = _digits(n, q, dim)
    row0, row1 = coords[:, :m], coords[:, m:]
    rank_le_1 = np.ones(n, dtype=bool)
    for j in range(m):
        for k in range(j + 1, m):
            minor = sub[mul[row0[:, j], row1[:, k]], mul[row0[:, k], row1[:, j]]]
            rank_le_1 &= minor == 0
    members = frozenset(np.flatnonzero(rank_le_1 & (np.arange(n) != 0)).tolist())
    return cayley_graph(ConnectionSet(VectorSpace(p, d * dim), members))


@lru_cache(maxsize=None)
def _regular_representation(q: int) -> np.ndarray:
    """(q, d, d) array: the matrix of multiplication-by-x over GF(p), in the
    power basis, for each element index x of GF(q) = GF(p**d)."""
    p, d = _split_prime_power(q)
    field = make_field(p, d)
    out = np.zeros((q, d, d), dtype=np.int64)
    for xi in range(q):
        x = field.from_index(xi)
        for j in range(d):
            basis = field.element(tuple(1 if t == j else 0 for t in range(d)))
            out[xi, :, j] = (x * basis).coeffs
    return out


def _blow_up(mat_idx: np.ndarray, q: int) -> np.ndarray:
    """Replace each GF(q)-index entry of a k x k matrix by its d x d
    multiplication block over GF(p)."""
    p, d = _split_prime_power(q)
    reg = _regular_representation(q)
    k = mat_idx.shape[0]
    out = np.zeros((k * d, k * d), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = reg[mat_idx[i, j]]
    return out


def _gl_gens_idx(k: int, q: int) -> list[np.ndarray]:
    """Generators of GL_k(q) as matrices of GF(q) element indices: a basis
    cycle, a transvection, and (q > 2) a diagonal primitive scaling."""
    cyc = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        cyc[(i + 1) % k, i] = 1
    tv = np.eye(k, dtype=np.int64)
    tv[0, 1] = 1
    gens = [cyc, tv]
    if q > 2:
        field = make_field(*_split_prime_power(q))
        dg = np.eye(k, dtype=np.int64)
        dg[0, 0] = field.omega.index
        gens.append(dg)
    return gens


def bilinear_forms_group(q: int, m: int) -> MatrixGroupSpec:
    """The row/column action A |-> P A Q^T of GL_2(q) x GL_m(q) on row-major
    matrix coordinates, as GF(p) matrices: generators kron(P, I_m) and
    kron(I_2, Q), entries blown up to multiplication blocks when q = p**d > p.
    Exactly 2 orbits on nonzero matrices: rank 1 and rank 2."""
    if m < 2:
        raise ValueError(f"m = {m} must be >= 2")
    p, d = _split_prime_power(q)
    mats = []
    eye2 = np.eye(2, dtype=np.int64)
    eyem = np.eye(m, dtype=np.int64)
    for pg in _gl_gens_idx(2, q):
        mats.append(np.kron(pg, eyem))
    for qg in _gl_gens_idx(m, q):
        mats.append(np.kron(eye2, qg))
    if d > 1:
        mats = [_blow_up(mt, q) for mt in mats]
    return MatrixGroupSpec(p, 2 * m * d, _as_gen_tuples(mats))


_ALT_PAIRS = [(i, j) for i in range(5) for j in range(i + 1, 5)]


def alternating_forms(n: int = 5, q: int = 2) -> DenseGraph:
    """Alternating forms graph A(5, 2): vertices = 5 x 5 alternating matrices
    over GF(2) (10 upper-triangle bits, row-major), A ~ B iff
    rank(A - B) = 2.  Only (n, q) = (5, 2) ships."""
    if (n, q) != (5, 2):
        raise Unsupported(f"only (n, q) = (5, 2) is shipped, got ({n}, {q})")
    count = 1 << 10
    bits = _digits(count, 2, 10)
    col = {pr: bits[:, t] for t, pr in enumerate(_ALT_PAIRS)}

    def b(i: int, j: int) -> np.ndarray:
        return col[(i, j)] if i < j else col[(j, i)]

    # rank <= 2 iff every principal 4x4 Pfaffian vanishes
    rank_le_2 = np.ones(count, dtype=bool)
    for excl in range(5):
        r = [t for t in range(5) if t != excl]
        pf = (
            b(r[0], r[1]) * b(r[2], r[3])
            ^ b(r[0], r[2]) * b(r[1], r[3])
            ^ b(r[0], r[3]) * b(r[1], r[2])
        )
        rank_le_2 &= pf == 0
    members = frozenset(np.flatnonzero(rank_le_2 & (np.arange(count) != 0)).tolist())
    return cayley_graph(ConnectionSet(VectorSpace(2, 10), members))


def alternating_forms_group() -> MatrixGroupSpec:
    """The congruence action A |-> P A P^T of GL_5(2) on the 10 upper-triangle
    coordinates of alternating 5 x 5 matrices, as 10 x 10 GF(2) matrices.
    Exactly 2 orbits on nonzero forms: rank 2 and rank 4."""
    mats = []
    for pg in _gl_gens_idx(5, 2):
        big = np.zeros((10, 10), dtype=np.int64)
        for cidx, (jj, ll) in enumerate(_ALT_PAIRS):
            for ridx, (ii, kk) in enumerate(_ALT_PAIRS):
                big[ridx, cidx] = (pg[ii, jj] * pg[kk, ll] + pg[ii, ll] * pg[kk, jj]) % 2
        mats.append(big)
    return MatrixGroupSpec(2, 10, _as_gen_tuples(mats))


# -- generic orbital construction -------------------------------------------------


def affine_orbital_graph(spec: MatrixGroupSpec, orbit_choice: int = 0) -> DenseGraph:
    """The orbital graph of the affine group V:G0 for G0 = <spec>: edges
    {x, y} with x - y in the chosen G0-orbit on nonzero vectors.

    Preconditions: G0 has exactly 2 orbits on nonzero vectors
    (WrongOrbitCount otherwise) and the chosen orbit is symmetric
    (AsymmetricOrbit otherwise).  Orbit 0 is the smaller one.  The affine
    group is verified to act as automorphisms of the result.
    """
    gs = linear_perms(spec)
    parts = orbit_partition(gs)
    nonzero = [o for o in parts if len(o) > 1 or o[0] != 0]
    if len(nonzero) != 2:
        raise WrongOrbitCount(len(nonzero))
    nonzero.sort(key=len)
    if orbit_choice not in (0, 1):
        raise ValueError(f"orbit_choice must be 0 or 1, got {orbit_choice}")
    chosen = nonzero[orbit_choice]
    neg = _negate_indices(chosen, spec.p, spec.d)
    if set(neg.tolist()) != set(chosen.tolist()):
        raise AsymmetricOrbit(
            f"the orbit of size {len(chosen)} is not closed under negation"
        )
    g = cayley_graph(
        ConnectionSet(VectorSpace(spec.p, spec.d), frozenset(int(x) for x in chosen))
    )
    for perm in affine_perms(spec).gens:
        img = perm.img
        if not np.array_equal(g.adj[np.ix_(img, img)], g.adj):  # pragma: no cover
            raise AssertionError("affine group generator is not an automorphism")
    return g


def quaternion_normalizer_spec(p: int) -> MatrixGroupSpec:
    """The normalizer in GL_2(p) of the standard quaternion group of order 8,
    Q8 = <[[0,-1],[1,0]], [[a,b],[b,-a]]> with a**2 + b**2 = -1 (smallest such
    pair).  Requires p odd (and p <= 50, from the normalizer scan)."""
    if p == 2 or not sympy.isprime(p):
        raise ValueError(f"p = {p} must be an odd prime")
    ab = next(
        (a, b)
        for a in range(p)
        for b in range(p)
        if (a * a + b * b) % p == p - 1
    )
    a, b = ab
    x = np.array([[0, p - 1], [1, 0]], dtype=np.int64)
    y = np.array([[a, b], [b, (p - a) % p]], dtype=np.int64)
    eye = np.eye(2, dtype=np.int64)
    group = []
    for s in (1, p - 1):
        for mat in (eye, x, y, (x @ y) % p):
            group.append((s * mat) % p)
    return normalizer_in_gl2(p, group)


def sl25_with_scalars_spec(p: int, seed: int = DEFAULT_SL25_SEED) -> MatrixGroupSpec:
    """SL_2(5) inside GL_2(p) extended by the full scalar group of order p - 1
    (the central product; for p = 3 mod 4 this equals the direct product with
    the odd part of the scalars)."""
    return central_product_with_scalars(p, find_sl25_in_gl2(p, seed), p - 1)


def sl23_with_scalars_spec(p: int) -> MatrixGroupSpec:
    """SL_2(3) = <X, Y, (I + X + Y + XY)/2> over GF(p) -- X, Y the standard
    quaternion pair with X^2 = Y^2 = -I -- adjoined with the odd-order part of
    the scalar group.  This is an index-2 subgroup of the full quaternion
    normalizer together with its scalars; for p = 7 and p = 23 its affine
    group has exactly two equal orbits on nonzero vectors."""
    if p == 2 or not sympy.isprime(p):
        raise ValueError(f"p = {p} must be an odd prime")
    a, b = next(
        (a, b)
        for a in range(p)
        for b in range(p)
        if (a * a + b * b) % p == p - 1
    )
    x = np.array([[0, p - 1], [1, 0]], dtype=np.int64)
    y = np.array([[a, b], [b, (p - a) % p]], dtype=np.int64)
    eye = np.eye(2, dtype=np.int64)
    s = ((eye + x + y + (x @ y)) * pow(2, -1, p)) % p
    odd_part = (p - 1) // ((p - 1) & -(p - 1))
    return central_product_with_scalars(
        p, MatrixGroupSpec(p, 2, (x, y, s)), odd_part
    )


def extraspecial_normalizer_spec(n: int) -> MatrixGroupSpec:
    """Shipped generator sets for the normalizers of extraspecial-type 2-group
    representations: on GF(5)^4 (n = 625, order 46080), GF(7)^4 (n = 2401,
    order 11520), and GF(3)^8 (n = 6561, order 6635520).  The files are
    derived and verified by scripts/derive_extraspecial_rows.py."""
    if n not in (625, 2401, 6561):
        raise Unsupported(f"no extraspecial normalizer data for n = {n}")
    res = importlib.resources.files("rank3").joinpath(f"data/extraspecial_{n}.txt")
    return parse_matrix_spec(res.read_text(encoding="utf-8"))


# -- descriptors and dispatch ------------------------------------------------------


FAMILY_TAGS = (
    "Paley",
    "Peisert",
    "VLS",
    "Hamming2",
    "AffinePolar",
    "BilinearForms",
    "AlternatingForms",
    "AffineOrbital",
)


@dataclass(frozen=True)
class FamilyId:
    """A family tag plus its parameters; parse_descriptor/family_graph give the
    string form and the construction."""

    tag: str
    params: tuple

    def __post_init__(self) -> None:
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family tag {self.tag!r}")


def parse_descriptor(text: str) -> FamilyId:
    """Parse a CLI family descriptor: paley:49, peisert:81, vls:16:3,
    hamming2:9, vo:-:4:2 (sign:dim:q), hq:2:3 (q:m), a52,
    orbital:q8:13, orbital:sl25:41, or orbital:<spec-file>."""
    parts = text.strip().split(":")
    head = parts[0].lower()
    try:
        if head == "paley" and len(parts) == 2:
            return FamilyId("Paley", (int(parts[1]),))
        if head == "peisert" and len(parts) == 2:
            return FamilyId("Peisert", (int(parts[1]),))
        if head == "vls" and len(parts) == 3:
            return FamilyId("VLS", (int(parts[1]), int(parts[2])))
        if head == "hamming2" and len(parts) == 2:
            return FamilyId("Hamming2", (int(parts[1]),))
        if head == "vo" and len(parts) == 4:
            sign = {"+": 1, "-": -1}.get(parts[1])
            dim = int(parts[2])
            if sign is None:
                raise ValueError(f"bad sign {parts[1]!r}, want + or -")
            if dim % 2 != 0:
                raise ValueError(f"dimension {dim} must be even")
            return FamilyId("AffinePolar", (dim // 2, int(parts[3]), sign))
        if head == "hq" and len(parts) == 3:
            return FamilyId("BilinearForms", (int(parts[1]), int(parts[2])))
        if head == "a52" and len(parts) == 1:
            return FamilyId("AlternatingForms", (5, 2))
        if head == "orbital" and len(parts) >= 2:
            if len(parts) == 3 and parts[1] in ("q8", "sl25", "sl23", "extraspecial"):
                return FamilyId("AffineOrbital", (parts[1], int(parts[2])))
            return FamilyId("AffineOrbital", ("file", text.split(":", 1)[1]))
    except ValueError as exc:
        raise ValueError(f"bad family descriptor {text!r}: {exc}") from None
    raise ValueError(f"unknown family descriptor {text!r}")


def format_descriptor(fid: FamilyId) -> str:
    tag, pr = fid.tag, fid.params
    if tag == "Paley":
        return f"paley:{pr[0]}"
    if tag == "Peisert":
        return f"peisert:{pr[0]}"
    if tag == "VLS":
        return f"vls:{pr[0]}:{pr[1]}"
    if tag == "Hamming2":
        return f"hamming2:{pr[0]}"
    if tag == "AffinePolar":
        m, q, eps = pr
        return f"vo:{'+' if eps == 1 else '-'}:{2 * m}:{q}"
    if tag == "BilinearForms":
        return f"hq:{pr[0]}:{pr[1]}"
    if tag == "AlternatingForms":
        return "a52"
    if tag == "AffineOrbital":
        kind = pr[0]
        if kind in ("q8", "sl25", "sl23", "extraspecial"):
            return f"orbital:{kind}:{pr[1]}"
        return f"orbital:{pr[1]}"
    raise ValueError(f"unknown family tag {tag!r}")  # pragma: no cover


def _orbital_spec(params: tuple) -> MatrixGroupSpec:
    kind = params[0]
    if kind == "q8":
        return quaternion_normalizer_spec(params[1])
    if kind == "sl25":
        return sl25_with_scalars_spec(params[1])
    if kind == "sl23":
        return sl23_with_scalars_spec(params[1])
    if kind == "extraspecial":
        return extraspecial_normalizer_spec(params[1])
    if kind == "file":
        return read_matrix_spec(params[1])
    raise ValueError(f"unknown orbital group kind {kind!r}")


def family_graph(fid: FamilyId) -> DenseGraph:
    """Construct the graph a FamilyId names."""
    tag, pr = fid.tag, fid.params
    if tag == "Paley":
        return paley(pr[0])
    if tag == "Peisert":
        return peisert(pr[0])
    if tag == "VLS":
        return van_lint_schrijver(pr[0], pr[1])
    if tag == "Hamming2":
        return hamming2(pr[0])
    if tag == "AffinePolar":
        return affine_polar(pr[0], pr[1], pr[2])
    if tag == "BilinearForms":
        return bilinear_forms(pr[0], pr[1])
    if tag == "AlternatingForms":
        return alternating_forms(pr[0], pr[1])
    if tag == "AffineOrbital":
        return affine_orbital_graph(_orbital_spec(pr))
    raise ValueError(f"unknown family tag {tag!r}")  # pragma: no cover


def family_matrix_spec(fid: FamilyId) -> MatrixGroupSpec | None:
    """The zero-stabilizer matrix group of the affine families (None for the
    one-dimensional semilinear and product-action families, and for
    affine_polar parameters whose group construction does not ship).  Useful
    when the full pair-orbit closure is too big: the stabilizer orbit sizes on
    nonzero vectors are the subdegrees of the affine group."""
    tag, pr = fid.tag, fid.params
    if tag == "AffinePolar":
        try:
            return affine_polar_group(pr[0], pr[1], pr[2])
        except Unsupported:
            return None
    if tag == "BilinearForms":
        return bilinear_forms_group(pr[0], pr[1])
    if tag == "AlternatingForms":
        alternating_forms(pr[0], pr[1])  # parameter validation
        return alternating_forms_group()
    if tag == "AffineOrbital":
        return _orbital_spec(pr)
    return None


def family_group(fid: FamilyId) -> GeneratorSet | None:
    """A transitive group of known automorphisms of family_graph(fid), for
    independent rank/subdegree checks.  None when no group construction ships
    for the parameters (affine_polar over a non-prime field, or the
    (2, 2, +1) transvection exception)."""
    tag, pr = fid.tag, fid.params
    if tag == "Paley":
        p, d = _split_prime_power(pr[0])
        return semilinear_perms(make_field(p, d), 2, True)
    if tag == "Peisert":
        p, d = _split_prime_power(pr[0])
        return semilinear_perms(make_field(p, d), 4, True, twist=1)
    if tag == "VLS":
        p, d = _split_prime_power(pr[0])
        return semilinear_perms(make_field(p, d), pr[1], True)
    if tag == "Hamming2":
        return hamming2_group(pr[0])
    if tag == "AffinePolar":
        m, q, eps = pr
        try:
            return affine_perms(affine_polar_group(m, q, eps))
        except Unsupported:
            return None
    if tag == "BilinearForms":
        return affine_perms(bilinear_forms_group(pr[0], pr[1]))
    if tag == "AlternatingForms":
        alternating_forms(pr[0], pr[1])  # parameter validation
        return affine_perms(alternating_forms_group())
    if tag == "AffineOrbital":
        return affine_perms(_orbital_spec(pr))
    raise ValueError(f"unknown family tag {tag!r}")  # pragma: no cover
