"""Permutation groups: orbits, deterministic Schreier-Sims, orbital analysis,
and matrix-group plumbing for the affine graph constructions.

Design notes.  Permutations wrap int32 numpy image arrays, so composition is a
single fancy-index.  Stabilizer-chain transversals are stored as Schreier
vectors (parent point + generator pointer) and recomposed on demand, keeping
memory O(n) per level even at degree ~10^4.  Rank and subdegrees come from a
flat pair-orbit breadth-first closure over n^2 labels (n <= 4096),
cross-checked against point-stabilizer orbit sizes from the stabilizer chain.

The Schreier-Sims variant here is the deterministic textbook one; see
Kreher & Stinson, "Combinatorial Algorithms", and Seress, "Permutation Group
Algorithms" for the underlying theory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy

from .gf import DoesNotDivide, FiniteField


class SingularGenerator(ValueError):
    """A matrix generator is not invertible mod p."""


class NotTransitive(ValueError):
    """Operation requires a transitive group."""


class NotASubgroup(ValueError):
    """The supplied matrix list is not a subgroup (not closed, or singular)."""


class NotFound(RuntimeError):
    """Randomized subgroup search exhausted its budget."""


class BadOrder(ValueError):
    """Requested scalar order does not divide p - 1."""


# -- permutations -------------------------------------------------------------


class Permutation:
    """A permutation of [0, n) stored as its image array: x -> img[x]."""

    __slots__ = ("img", "_inv")

    def __init__(self, images, _validate: bool = True):
        img = np.array(images, dtype=np.int32)
        if _validate:
            if img.ndim != 1:
                raise ValueError("images must be one-dimensional")
            n = img.shape[0]
            if n == 0 or img.min() < 0 or img.max() >= n:
                raise ValueError("image values out of range")
            if np.bincount(img, minlength=n).max() > 1:
                raise ValueError("images is not a bijection")
        img.setflags(write=False)
        self.img = img
        self._inv = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int32), _validate=False)

    @property
    def degree(self) -> int:
        return self.img.shape[0]

    @property
    def inv(self) -> "Permutation":
        if self._inv is None:
            inv = np.empty_like(self.img)
            inv[self.img] = np.arange(self.degree, dtype=np.int32)
            q = Permutation(inv, _validate=False)
            q._inv = self
            self._inv = q
        return self._inv

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(x) = self(other(x))
        return Permutation(self.img[other.img], _validate=False)

    def __call__(self, x: int) -> int:
        return int(self.img[x])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.img, np.arange(self.degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for s in range(self.degree):
            if seen[s] or self.img[s] == s:
                continue
            cyc = [s]
            seen[s] = True
            x = int(self.img[s])
            while x != s:
                cyc.append(x)
                seen[x] = True
                x = int(self.img[x])
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.img, other.img)

    def __hash__(self):
        return hash(self.img.tobytes())

    def __repr__(self) -> str:
        if self.degree <= 24:
            cyc = self.cycles()
            return "Permutation" + ("".join(str(c) for c in cyc) if cyc else "(id)")
        return f"Permutation(degree={self.degree}, moved={int((self.img != np.arange(self.degree)).sum())})"


def from_cycles(n: int, cycles) -> Permutation:
    """Permutation of [0, n) from a list of cycles."""
    img = np.arange(n, dtype=np.int32)
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
            img[a] = b
    return Permutation(img)


def format_permutation(perm: Permutation) -> str:
    """One-line image array, space-separated."""
    return " ".join(str(int(x)) for x in perm.img)


def parse_permutation(line: str) -> Permutation:
    return Permutation([int(t) for t in line.split()])


@dataclass(frozen=True)
class GeneratorSet:
    """A finite permutation group given by generators of common degree."""

    degree: int
    gens: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for g in self.gens:
            if g.degree != self.degree:
                raise ValueError(f"generator degree {g.degree} != {self.degree}")


def orbit(gs: GeneratorSet, point: int) -> set[int]:
    """The orbit of point under <gens>, by breadth-first closure."""
    n = gs.degree
    if not 0 <= point < n:
        raise ValueError(f"point {point} out of range [0, {n})")
    seen = np.zeros(n, dtype=bool)
    seen[point] = True
    frontier = np.array([point], dtype=np.int64)
    imgs = [g.img for g in gs.gens]
    while frontier.size:
        parts = []
        for img in imgs:
            y = img[frontier]
            y = y[~seen[y]]
            if y.size:
                y = np.unique(y)
                seen[y] = True
                parts.append(y)
        frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    return set(np.flatnonzero(seen).tolist())


def orbit_partition(gs: GeneratorSet) -> list[np.ndarray]:
    """All orbits on [0, n), each as a sorted array, ordered by smallest point."""
    n = gs.degree
    assigned = np.zeros(n, dtype=bool)
    out = []
    for s in range(n):
        if assigned[s]:
            continue
        orb = np.array(sorted(orbit(gs, s)), dtype=np.int64)
        assigned[orb] = True
        out.append(orb)
    return out


# -- Schreier-Sims ------------------------------------------------------------


class _Level:
    """One stabilizer-chain level: base point, generators fixing all earlier
    base points, and a Schreier vector for the fundamental orbit."""

    __slots__ = ("base", "gens", "enc", "parent", "orbit_order", "x_done", "g_done")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens: list[Permutation] = []
        # enc[x]: -1 unset, -2 root, else 2*gen_index + (1 if discovered via inverse)
        self.enc = np.full(n, -1, dtype=np.int32)
        self.parent = np.full(n, -1, dtype=np.int32)
        self.enc[base] = -2
        self.parent[base] = base
        self.orbit_order: list[int] = [base]
        self.x_done = 0
        self.g_done = 0


def _extend_orbit(lvl: _Level, n: int) -> None:
    """Grow the fundamental orbit; existing Schreier-vector entries are never
    rewritten, so previously computed transversal words stay valid."""
    imgs = []
    for g in lvl.gens:
        imgs.append(g.img)
        imgs.append(g.inv.img)
    frontier = np.array(lvl.orbit_order, dtype=np.int64)
    while frontier.size:
        parts = []
        for code, img in enumerate(imgs):
            y = img[frontier].astype(np.int64)
            mask = lvl.enc[y] == -1
            if mask.any():
                ys = y[mask]
                # a bijection maps distinct frontier points to distinct images,
                # and enc is updated before the next generator is tried
                lvl.enc[ys] = code
                lvl.parent[ys] = frontier[mask]
                parts.append(ys)
        if not parts:
            break
        frontier = np.concatenate(parts)
        lvl.orbit_order.extend(frontier.tolist())


def _transversal_img(lvl: _Level, x: int) -> np.ndarray | None:
    """Image array of the transversal element u with u(base) = x, or None for
    the identity (x == base)."""
    word = []
    while x != lvl.base:
        code = int(lvl.enc[x])
        word.append(code)
        x = int(lvl.parent[x])
    if not word:
        return None
    u = None
    for code in reversed(word):
        g = lvl.gens[code >> 1]
        f = g.inv.img if code & 1 else g.img
        u = f if u is None else f[u]
    return u


def _invert_img(u: np.ndarray) -> np.ndarray:
    inv = np.empty_like(u)
    inv[u] = np.arange(u.shape[0], dtype=u.dtype)
    return inv


def _sift_img(levels: list[_Level], g: np.ndarray, start: int, idarr: np.ndarray):
    """Sift an image array through levels[start:].  Returns (residue, level):
    residue None means g factors completely through the chain."""
    cur = g
    for j in range(start, len(levels)):
        lvl = levels[j]
        x = int(cur[lvl.base])
        if x == lvl.base:
            continue
        if lvl.enc[x] == -1:
            return cur, j
        u = _transversal_img(lvl, x)
        cur = _invert_img(u)[cur]
    if np.array_equal(cur, idarr):
        return None, len(levels)
    return cur, len(levels)


class BSGS:
    """Base and strong generating set: exact group order plus membership tests."""

    def __init__(self, degree: int, levels: list[_Level]):
        self.degree = degree
        self._levels = levels
        self.base = tuple(lvl.base for lvl in levels)
        self.orbit_sizes = tuple(len(lvl.orbit_order) for lvl in levels)
        self.order: int = math.prod(self.orbit_sizes) if levels else 1
        self._idarr = np.arange(degree, dtype=np.int32)

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        resid, _ = _sift_img(self._levels, perm.img, 0, self._idarr)
        return resid is None

    def strong_generators(self, level: int = 0) -> list[Permutation]:
        """The strong generators fixing the first `level` base points.  Level
        lists are cumulative (each level holds every strong generator fixing
        its base prefix), so this is a single level's list."""
        if level >= len(self._levels):
            return []
        return list(self._levels[level].gens)

    def stabilizer_generators(self, level: int) -> GeneratorSet:
        """Generators of the pointwise stabilizer of base[:level]."""
        return GeneratorSet(self.degree, tuple(self.strong_generators(level)))

    def __repr__(self) -> str:
        return f"BSGS(base={self.base}, order={self.order})"


def schreier_sims(gs: GeneratorSet, base_prefix: tuple[int, ...] = ()) -> BSGS:
    """Deterministic Schreier-Sims: exact order and a membership oracle.

    Level generator lists are cumulative: an element fixing the first j base
    points is appended to the lists of every level lo..j, where lo is the
    level it was derived at (below lo it is already a product of known
    generators).  Without this a generator that fixes an intermediate base
    point but moves other points of that level's orbit would be skipped and
    the fundamental orbit would come out too small.

    base_prefix forces the first base points (useful for extracting point
    stabilizers); remaining base points are chosen as the first point moved
    by the element that opens the level.
    """
    n = gs.degree
    idarr = np.arange(n, dtype=np.int32)
    levels: list[_Level] = []
    # (lo, img): an element certifiably generated by the cumulative lists of
    # every level < lo, and fixing all base points of levels < lo
    pending: list[tuple[int, np.ndarray]] = [
        (0, g.img) for g in reversed(gs.gens) if not np.array_equal(g.img, idarr)
    ]
    while pending:
        lo, gimg = pending.pop()
        # walk to the first level at depth >= lo whose base point gimg moves,
        # appending fresh levels (which may have forced, fixed bases) on the way
        j = lo
        while True:
            if j == len(levels):
                if j < len(base_prefix):
                    b = int(base_prefix[j])
                else:
                    b = int(np.flatnonzero(gimg != idarr)[0])
                levels.append(_Level(b, n))
            if gimg[levels[j].base] != levels[j].base:
                break
            j += 1
        for k in range(lo, j + 1):
            lvl = levels[k]
            if any(np.array_equal(gimg, h.img) for h in lvl.gens):
                continue
            lvl.gens.append(Permutation(gimg, _validate=False))
            _extend_orbit(lvl, n)
            # process Schreier generators for all (orbit point, generator)
            # pairs not covered by the already-done rectangle
            X, G = len(lvl.orbit_order), len(lvl.gens)
            for pos in range(X):
                x = lvl.orbit_order[pos]
                ux = _transversal_img(lvl, x)
                for gi in range(G):
                    if pos < lvl.x_done and gi < lvl.g_done:
                        continue
                    s = lvl.gens[gi].img
                    sux = s if ux is None else s[ux]
                    y = int(sux[lvl.base])
                    uy = _transversal_img(lvl, y)
                    h = sux if uy is None else _invert_img(uy)[sux]
                    if np.array_equal(h, idarr):
                        continue
                    resid, _ = _sift_img(levels, h, k + 1, idarr)
                    if resid is not None:
                        pending.append((k + 1, resid))
            lvl.x_done, lvl.g_done = X, G
    return BSGS(n, levels)


# -- rank and subdegrees -------------------------------------------------------


def rank_and_subdegrees(gs: GeneratorSet) -> tuple[int, list[int]]:
    """Number of orbits on ordered pairs, and the sizes of the non-diagonal
    orbitals through (0, .), sorted ascending.

    Uses a flat breadth-first closure over all n^2 pairs, so n is capped at
    4096; the result is cross-checked against the orbit sizes of the point
    stabilizer extracted from a stabilizer chain based at 0.
    """
    n = gs.degree
    if n > 4096:
        raise ValueError(f"pair-orbit closure needs n <= 4096, got {n}")
    if len(orbit(gs, 0)) != n:
        raise NotTransitive(f"orbit of 0 has size {len(orbit(gs, 0))} < {n}")
    labels = np.full(n * n, -1, dtype=np.int16)
    imgs = [g.img.astype(np.int64) for g in gs.gens]
    label = 0
    while True:
        seed = int(np.argmax(labels == -1))
        if labels[seed] != -1:
            break
        labels[seed] = label
        frontier = np.array([seed], dtype=np.int64)
        while frontier.size:
            rows, cols = frontier // n, frontier % n
            parts = []
            for img in imgs:
                tgt = img[rows] * n + img[cols]
                tgt = tgt[labels[tgt] == -1]
                if tgt.size:
                    labels[tgt] = label
                    parts.append(tgt)
            frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
        label += 1
    rank = label
    row0 = labels[:n].astype(np.int64)
    counts = np.bincount(row0, minlength=rank)
    diag = int(labels[0])
    subdegrees = sorted(int(c) for lbl, c in enumerate(counts) if lbl != diag)
    assert sum(subdegrees) + 1 == n, "subdegrees must partition the non-base points"
    # cross-check: subdegrees = orbit sizes of the point stabilizer at 0
    stab = schreier_sims(gs, base_prefix=(0,)).stabilizer_generators(1)
    stab_sizes = sorted(o.size for o in orbit_partition(stab) if 0 not in o)
    assert stab_sizes == subdegrees, (
        f"pair-orbit subdegrees {subdegrees} != stabilizer orbit sizes {stab_sizes}"
    )
    return rank, subdegrees


# -- matrix groups over GF(p) --------------------------------------------------


def _det_mod(mat, p: int) -> int:
    """Determinant mod p by fraction-free Gaussian elimination."""
    m = [[int(x) % p for x in row] for row in np.asarray(mat)]
    d = len(m)
    det = 1
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, d):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[col])]
    return det % p


@dataclass(frozen=True)
class MatrixGroupSpec:
    """A subgroup of GL_d(p) given by invertible generator matrices."""

    p: int
    d: int
    gens: tuple

    def __post_init__(self):
        mats = []
        for g in self.gens:
            m = np.asarray(g, dtype=np.int64) % self.p
            if m.shape != (self.d, self.d):
                raise ValueError(f"generator shape {m.shape} != ({self.d}, {self.d})")
            if _det_mod(m, self.p) == 0:
                raise SingularGenerator(f"generator is singular mod {self.p}:\n{m}")
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "gens", tuple(mats))


def _digit_matrix(q: int, p: int, d: int) -> np.ndarray:
    """(q, d) array: row i holds the base-p digits of i (little-endian).
    Matches the field element indexing of module gf."""
    idx = np.arange(q, dtype=np.int64)
    return np.stack([(idx // p**j) % p for j in range(d)], axis=1)


def linear_perms(spec: MatrixGroupSpec) -> GeneratorSet:
    """The matrix generators acting on all p^d vectors (0 is fixed)."""
    p, d = spec.p, spec.d
    q = p**d
    digits = _digit_matrix(q, p, d)
    pv = p ** np.arange(d, dtype=np.int64)
    gens = []
    for m in spec.gens:
        img = (digits @ m.T % p) @ pv
        gens.append(Permutation(img.astype(np.int32), _validate=False))
    return GeneratorSet(q, tuple(gens))


def affine_perms(spec: MatrixGroupSpec) -> GeneratorSet:
    """Translations by the d basis vectors plus the linear generators: the
    affine group V:<matrix gens> of order p^d * |<matrix gens>| on p^d points."""
    p, d = spec.p, spec.d
    q = p**d
    digits = _digit_matrix(q, p, d)
    pv = p ** np.arange(d, dtype=np.int64)
    gens = []
    for j in range(d):
        shifted = digits.copy()
        shifted[:, j] = (shifted[:, j] + 1) % p
        gens.append(Permutation((shifted @ pv).astype(np.int32), _validate=False))
    return GeneratorSet(q, tuple(gens) + linear_perms(spec).gens)


def semilinear_stabilizer_perms(
    field: FiniteField, e: int, include_frobenius: bool, twist: int = 0
) -> GeneratorSet:
    """Zero-stabilizer generators on GF(q): x -> omega^e * x, and optionally
    the twisted field automorphism x -> omega^twist * x^p."""
    q, p = field.q, field.p
    if e < 1 or (q - 1) % e:
        raise DoesNotDivide(f"e = {e} does not divide q - 1 = {q - 1}")
    if field._exp is None:
        raise ValueError("semilinear permutations need the field's exp table (q <= 2**16)")
    exp = np.array(field._exp, dtype=np.int64)
    ks = np.arange(q - 1, dtype=np.int64)
    gens = []
    mult = np.zeros(q, dtype=np.int64)
    mult[exp] = exp[(ks + e) % (q - 1)]
    gens.append(Permutation(mult.astype(np.int32), _validate=False))
    if include_frobenius:
        frob = np.zeros(q, dtype=np.int64)
        frob[exp] = exp[(p * ks + twist) % (q - 1)]
        gens.append(Permutation(frob.astype(np.int32), _validate=False))
    return GeneratorSet(q, tuple(gens))


def semilinear_perms(
    field: FiniteField, e: int, include_frobenius: bool, twist: int = 0
) -> GeneratorSet:
    """Translations plus semilinear_stabilizer_perms: the one-dimensional
    affine semilinear group F:<omega-hat^e[, phi-hat omega-hat^twist]>."""
    q, p, d = field.q, field.p, field.d
    stab = semilinear_stabilizer_perms(field, e, include_frobenius, twist)
    digits = _digit_matrix(q, p, d)
    pv = p ** np.arange(d, dtype=np.int64)
    gens = []
    for j in range(d):
        shifted = digits.copy()
        shifted[:, j] = (shifted[:, j] + 1) % p
        gens.append(Permutation((shifted @ pv).astype(np.int32), _validate=False))
    return GeneratorSet(q, tuple(gens) + stab.gens)


# -- GL_2(p) searches ----------------------------------------------------------


def _encode2(mats: np.ndarray, p: int) -> np.ndarray:
    m = mats.reshape(-1, 4) % p
    return ((m[:, 0] * p + m[:, 1]) * p + m[:, 2]) * p + m[:, 3]


def _decode2(codes: np.ndarray, p: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.size, 2, 2), dtype=np.int64)
    out[:, 1, 1] = codes % p
    out[:, 1, 0] = codes // p % p
    out[:, 0, 1] = codes // p**2 % p
    out[:, 0, 0] = codes // p**3 % p
    return out


def matrix_group_closure(p: int, gens, cap: int | None = None) -> np.ndarray:
    """Sorted element codes of the 2x2 matrix group <gens> mod p, by
    breadth-first multiplication closure.  Stops early (returning a partial,
    oversized set) once more than `cap` elements are seen."""
    genmats = np.array([np.asarray(g) % p for g in gens], dtype=np.int64)
    known = _encode2(np.eye(2, dtype=np.int64)[None], p)
    frontier = known
    while frontier.size:
        f = _decode2(frontier, p)
        prods = np.einsum("fij,gjk->fgik", f, genmats) % p
        codes = np.unique(_encode2(prods, p))
        new = codes[~np.isin(codes, known)]
        known = np.sort(np.concatenate([known, new]))
        frontier = new
        if cap is not None and known.size > cap:
            return known
    return known


def normalizer_in_gl2(p: int, subgroup) -> MatrixGroupSpec:
    """Generators of the normalizer of a subgroup R <= GL_2(p), by exhaustive
    scan of GL_2(p) (p <= 50) followed by greedy generating-set reduction.

    `subgroup` must list all elements of R; NotASubgroup otherwise.
    """
    if p > 50:
        raise ValueError(f"exhaustive GL_2(p) scan is limited to p <= 50, got {p}")
    R = np.array([np.asarray(m, dtype=np.int64) % p for m in subgroup])
    if R.ndim != 3 or R.shape[1:] != (2, 2):
        raise ValueError("subgroup must be a list of 2x2 matrices")
    dets = (R[:, 0, 0] * R[:, 1, 1] - R[:, 0, 1] * R[:, 1, 0]) % p
    if (dets == 0).any():
        raise NotASubgroup("subgroup list contains a singular matrix")
    r_codes = np.unique(_encode2(R, p))
    if r_codes.size != R.shape[0]:
        raise NotASubgroup("subgroup list contains duplicates")
    prods = np.einsum("aij,bjk->abik", R, R) % p
    if not np.isin(_encode2(prods, p), r_codes).all():
        raise NotASubgroup("subgroup list is not closed under multiplication")

    inv_t = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    found = []
    chunk = 1 << 18
    for lo in range(0, p**4, chunk):
        codes = np.arange(lo, min(lo + chunk, p**4), dtype=np.int64)
        g = _decode2(codes, p)
        det = (g[:, 0, 0] * g[:, 1, 1] - g[:, 0, 1] * g[:, 1, 0]) % p
        keep = det != 0
        g, codes, det = g[keep], codes[keep], det[keep]
        ginv = np.empty_like(g)
        ginv[:, 0, 0], ginv[:, 1, 1] = g[:, 1, 1], g[:, 0, 0]
        ginv[:, 0, 1], ginv[:, 1, 0] = -g[:, 0, 1] % p, -g[:, 1, 0] % p
        ginv = ginv * inv_t[det][:, None, None] % p
        ok = np.ones(codes.size, dtype=bool)
        for r in R:
            gr = np.einsum("nij,jk->nik", g[ok], r) % p
            conj = np.einsum("nij,njk->nik", gr, ginv[ok]) % p
            ok[np.flatnonzero(ok)[~np.isin(_encode2(conj, p), r_codes)]] = False
            if not ok.any():
                break
        found.append(codes[ok])
    norm_codes = np.concatenate(found)  # already sorted: chunks are ascending

    gens: list[np.ndarray] = []
    closure = _encode2(np.eye(2, dtype=np.int64)[None], p)
    for code in norm_codes:
        if closure.size == norm_codes.size:
            break
        if np.isin(code, closure)[()]:
            continue
        gens.append(_decode2(np.array([code]), p)[0])
        closure = matrix_group_closure(p, gens)
    assert closure.size == norm_codes.size, "greedy reduction failed to regenerate"
    return MatrixGroupSpec(p, 2, tuple(gens))


def _matrix_order(m, p: int, cap: int) -> int:
    """Multiplicative order of a 2x2 matrix mod p, or cap + 1 if larger."""
    ident = np.eye(2, dtype=np.int64)
    x = np.asarray(m, dtype=np.int64) % p
    cur = x
    for k in range(1, cap + 1):
        if np.array_equal(cur, ident):
            return k
        cur = cur @ x % p
    return cap + 1


DEFAULT_SL25_SEED = 1729


def find_sl25_in_gl2(p: int, seed: int = DEFAULT_SL25_SEED, budget: int = 20000) -> MatrixGroupSpec:
    """Search SL_2(p) for a subgroup of order 120 with a unique involution
    (the double cover of Alt(5)): sample elements of order 10 and order 4,
    test the pair's multiplication closure, repeat within a draw budget.

    Deterministic for a fixed seed.  Raises NotFound when the budget runs out,
    which is the expected outcome for p not congruent to +-1 mod 5.
    """
    if p == 2:
        raise NotFound("SL_2(5) needs an odd prime modulus")
    rng = np.random.default_rng(seed)
    draws = 0

    def draw_sl2():
        nonlocal draws
        draws += 1
        a, b, c = (int(v) for v in rng.integers(0, p, size=3))
        if a:
            return ((a, b), (c, (1 + b * c) * pow(a, -1, p) % p))
        if b:
            return ((0, b), ((p - pow(b, -1, p)) % p, int(rng.integers(0, p))))
        return None

    def draw_of_order(target: int):
        while draws < budget:
            m = draw_sl2()
            if m is not None and _matrix_order(m, p, 2 * p + 2) == target:
                return m
        return None

    while draws < budget:
        x = draw_of_order(10)
        y = draw_of_order(4)
        if x is None or y is None:
            break
        closure = matrix_group_closure(p, [x, y], cap=121)
        if closure.size != 120:
            continue
        mats = _decode2(closure, p)
        squares = np.einsum("nij,njk->nik", mats, mats) % p
        is_ident = (squares == np.eye(2, dtype=np.int64)).all(axis=(1, 2))
        not_ident = ~(mats == np.eye(2, dtype=np.int64)).all(axis=(1, 2))
        if int((is_ident & not_ident).sum()) != 1:
            continue
        spec = MatrixGroupSpec(p, 2, (x, y))
        check = schreier_sims(linear_perms(spec))
        assert check.order == 120, f"closure said 120 but the permutation action has order {check.order}"
        return spec
    raise NotFound(
        f"no order-120 unique-involution subgroup of SL_2({p}) within {budget} draws "
        f"(expected for p != +-1 mod 5)"
    )


def central_product_with_scalars(p: int, s: MatrixGroupSpec, scalar_order: int) -> MatrixGroupSpec:
    """Adjoin the scalar matrix of multiplicative order scalar_order mod p."""
    if scalar_order < 1 or (p - 1) % scalar_order:
        raise BadOrder(f"scalar order {scalar_order} does not divide p - 1 = {p - 1}")
    if scalar_order == 1:
        return s
    g = 1 if p == 2 else int(sympy.primitive_root(p))
    lam = pow(g, (p - 1) // scalar_order, p)
    scalar = np.eye(s.d, dtype=np.int64) * lam
    return MatrixGroupSpec(p, s.d, s.gens + (scalar,))


# -- matrix-group spec files ----------------------------------------------------


def parse_matrix_spec(text: str) -> MatrixGroupSpec:
    """Text format: first line "p d", then one generator per line as d*d
    row-major integers.  Blank lines and #-comments are allowed."""
    rows = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            rows.append(ln)
    if not rows:
        raise ValueError("empty matrix-group spec")
    p, d = (int(t) for t in rows[0].split())
    gens = []
    for ln in rows[1:]:
        vals = [int(t) for t in ln.split()]
        if len(vals) != d * d:
            raise ValueError(f"expected {d * d} entries per generator line, got {len(vals)}")
        gens.append(np.array(vals, dtype=np.int64).reshape(d, d))
    return MatrixGroupSpec(p, d, tuple(gens))


def format_matrix_spec(spec: MatrixGroupSpec) -> str:
    lines = [f"{spec.p} {spec.d}"]
    for g in spec.gens:
        lines.append(" ".join(str(int(x)) for x in np.asarray(g).ravel()))
    return "\n".join(lines) + "\n"


def read_matrix_spec(path) -> MatrixGroupSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix_spec(fh.read())


def write_matrix_spec(spec: MatrixGroupSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix_spec(spec))
