"""Exact linear algebra over the ring Z/(p^n).

Finite modules are presented as direct sums of cyclic p-power groups,
recorded by the exponent sequence of the cyclic factors.  A map between
such modules is stored entrywise; the entry (i, j) lifts a homomorphism
Z/p^{a_j} -> Z/p^{b_i} and is therefore divisible by p^{max(0, b_i - a_j)}.

The canonical row form used throughout is the Howell normal form, the
analogue of reduced row echelon form that is unique for a given row span
over Z/(p^n).  Diagonalization (Smith form over the local ring) drives
kernels, solving, and the subquotient structure computations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

MAX_MODULUS = 1 << 31


class InputError(ValueError):
    """Malformed input: bad shapes, non-reduced or non-divisible entries."""


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingParams:
    """The ring Z/(p^n) with its modulus cached."""

    p: int
    n: int
    modulus: int = field(init=False)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")
        if self.n < 1:
            raise InputError(f"n = {self.n} must be >= 1")
        m = self.p ** self.n
        if m > MAX_MODULUS:
            raise InputError(f"p^n = {m} exceeds the 2^31 overflow guard")
        object.__setattr__(self, "modulus", m)

    def val(self, x: int) -> int:
        """p-adic valuation of x mod p^n, with val(0) = n."""
        x %= self.modulus
        if x == 0:
            return self.n
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def unit_inverse(self, u: int) -> int:
        return pow(u, -1, self.modulus)


@dataclass(frozen=True)
class Partition:
    """Isomorphism type of a finite Z/(p^n)-module: weakly decreasing exponents."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(a) for a in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(a < 1 for a in parts):
            raise InputError(f"partition parts must be >= 1: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InputError(f"partition must be weakly decreasing: {parts}")

    @classmethod
    def make(cls, parts) -> "Partition":
        return cls(tuple(sorted((int(a) for a in parts), reverse=True)))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def total(self) -> int:
        return sum(self.parts)

    def check_bound(self, n: int):
        if self.parts and self.parts[0] > n:
            raise InputError(f"part {self.parts[0]} exceeds ring length {n}")


# ---------------------------------------------------------------------------
# Raw matrices: lists of rows of ints, reduced mod p^n.


def mat_identity(k: int) -> list[list[int]]:
    return [[1 if j == i else 0 for j in range(k)] for i in range(k)]


def mat_mul(a, b, modulus: int) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise InputError("matrix shape mismatch in product")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        out.append([sum(row[k] * b[k][j] for k in range(len(b))) % modulus
                    for j in range(cols)])
    return out


def mat_vec(a, x, modulus: int) -> list[int]:
    return [sum(row[j] * x[j] for j in range(len(x))) % modulus for row in a]


def _check_reduced(rows, modulus: int):
    for row in rows:
        for x in row:
            if not (0 <= x < modulus):
                raise InputError(f"entry {x} not reduced mod {modulus}")


def howell_form(rows, params: RingParams):
    """Howell normal form of the row span, with an invertible transform.

    Returns (H, U) where H = U * A, A being the input padded with zero
    rows whenever the Howell form needs more rows than the input has.
    H consists of the Howell rows followed by zero rows; row span and
    nonzero rows are unique for the given span.  Pivots are normalized
    to powers of p, entries above a pivot are reduced modulo it, and for
    every pivot p^v the annihilator row p^(n-v) times it is spanned by
    later rows (the Howell property).
    """
    N, n, p = params.modulus, params.n, params.p
    rows = [list(map(int, r)) for r in rows]
    _check_reduced(rows, N)
    r = len(rows)
    c = len(rows[0]) if rows else 0
    work = [row[:] for row in rows]
    U = mat_identity(r)

    def row_sub(i, q, j):
        work[i] = [(work[i][t] - q * work[j][t]) % N for t in range(c)]
        U[i] = [(U[i][t] - q * U[j][t]) % N for t in range(len(U))]

    def row_scale(i, u):
        work[i] = [(u * x) % N for x in work[i]]
        U[i] = [(u * x) % N for x in U[i]]

    def row_swap(i, j):
        work[i], work[j] = work[j], work[i]
        U[i], U[j] = U[j], U[i]

    def append_multiple(src, scalar):
        # Unitriangular extension: U stays square and invertible, the new
        # row of the implicitly padded input is zero.
        base = [(scalar * x) % N for x in U[src]]
        for urow in U:
            urow.append(0)
        U.append(base + [1])
        work.append([(scalar * x) % N for x in work[src]])

    pivot = 0
    for col in range(c):
        cands = [(params.val(work[i][col]), work[i][col], i)
                 for i in range(pivot, len(work)) if work[i][col] % N != 0]
        if not cands:
            continue
        v, _, i0 = min(cands)
        row_swap(pivot, i0)
        u = work[pivot][col] // p ** v
        row_scale(pivot, params.unit_inverse(u))
        for i in range(len(work)):
            if i == pivot:
                continue
            e = work[i][col]
            if e == 0:
                continue
            row_sub(i, e // p ** v, pivot)
        if v > 0:
            scalar = p ** (n - v)
            if any((scalar * x) % N for x in work[pivot]):
                append_multiple(pivot, scalar)
        pivot += 1

    h = max(r, pivot)
    if len(work) > h:
        _trim_transform(work, U, h, params)
        work = work[:h]
        U = [row[:h] for row in U[:h]]
    return [row[:] for row in work], U


def _trim_transform(work, U, h, params):
    """Make the top-left h x h block of U invertible by adding zero rows.

    Rows h.. of `work` are zero, so adding them into earlier rows keeps
    H = U * A intact.  The first h columns of the invertible U have full
    column rank mod p, which guarantees the greedy repair succeeds.
    """
    N, p = params.modulus, params.p
    total = len(U)
    chosen: list[list[int]] = []  # rref rows mod p over the first h columns

    def reduce_mod_p(vec):
        v = [x % p for x in vec[:h]]
        for row in chosen:
            lead = next(i for i, x in enumerate(row) if x)
            if v[lead]:
                q = (v[lead] * pow(row[lead], -1, p)) % p
                v = [(v[i] - q * row[i]) % p for i in range(h)]
        return v

    def insert(vec):
        chosen.append(vec)

    for i in range(h):
        v = reduce_mod_p(U[i])
        if any(v):
            insert(v)
            continue
        fixed = False
        for j in range(h, total):
            w = reduce_mod_p(U[j])
            if any(w):
                U[i] = [(U[i][t] + U[j][t]) % N for t in range(total)]
                work[i] = [(work[i][t] + work[j][t]) % N for t in range(len(work[i]))]
                insert(w)
                fixed = True
                break
        if not fixed:
            raise AssertionError("howell transform trim failed")


@dataclass(frozen=True)
class SmithData:
    """U * A * V = diag(p^d) with d weakly increasing; inverses tracked."""

    dvals: tuple[int, ...]
    U: tuple
    Uinv: tuple
    V: tuple
    Vinv: tuple
    rows: int
    cols: int


def smith_form(mat, params: RingParams) -> SmithData:
    N, n, p = params.modulus, params.n, params.p
    r = len(mat)
    c = len(mat[0]) if mat else 0
    work = [[x % N for x in row] for row in mat]
    U, Uinv = mat_identity(r), mat_identity(r)
    V, Vinv = mat_identity(c), mat_identity(c)

    def row_swap(i, j):
        work[i], work[j] = work[j], work[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in work:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_scale(i, u):
        uinv = params.unit_inverse(u)
        work[i] = [(u * x) % N for x in work[i]]
        U[i] = [(u * x) % N for x in U[i]]
        for row in Uinv:
            row[i] = (row[i] * uinv) % N

    def row_sub(i, q, j):
        # row_i -= q * row_j
        work[i] = [(work[i][t] - q * work[j][t]) % N for t in range(c)]
        U[i] = [(U[i][t] - q * U[j][t]) % N for t in range(r)]
        for row in Uinv:
            row[j] = (row[j] + q * row[i]) % N

    def col_sub(j, q, i):
        # col_j -= q * col_i
        for row in work:
            row[j] = (row[j] - q * row[i]) % N
        for row in V:
            row[j] = (row[j] - q * row[i]) % N
        Vinv[i] = [(Vinv[i][t] + q * Vinv[j][t]) % N for t in range(c)]

    dvals = []
    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = work[i][j]
                if x:
                    v = params.val(x)
                    key = (v, i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, i0, j0 = best
        row_swap(t, i0)
        col_swap(t, j0)
        v = params.val(work[t][t])
        row_scale(t, params.unit_inverse(work[t][t] // p ** v))
        for i in range(r):
            if i != t and work[i][t]:
                row_sub(i, work[i][t] // p ** v, t)
        for j in range(c):
            if j != t and work[t][j]:
                col_sub(j, work[t][j] // p ** v, t)
        dvals.append(v)

    freeze = lambda m: tuple(tuple(row) for row in m)
    return SmithData(tuple(dvals), freeze(U), freeze(Uinv), freeze(V), freeze(Vinv), r, c)


def nullspace_gens(mat, params: RingParams) -> list[list[int]]:
    """Generators of {x : mat * x = 0} over Z/(p^n), as column vectors."""
    sm = smith_form(mat, params)
    n, p = params.n, params.p
    gens = []
    for t in range(sm.cols):
        d = sm.dvals[t] if t < len(sm.dvals) else 0
        scale = p ** (n - d) if t < len(sm.dvals) else 1
        if t < len(sm.dvals) and d == 0:
            continue
        col = [(scale * sm.V[i][t]) % params.modulus for i in range(sm.cols)]
        if any(col):
            gens.append(col)
    return gens


def solve_raw(mat, rhs, params: RingParams):
    """Some x with mat * x = rhs over Z/(p^n), or None."""
    sm = smith_form(mat, params)
    N, p = params.modulus, params.p
    cvec = [sum(sm.U[i][k] * rhs[k] for k in range(sm.rows)) % N for i in range(sm.rows)]
    z = [0] * sm.cols
    for i in range(sm.rows):
        d = sm.dvals[i] if i < len(sm.dvals) else None
        if d is None:
            if cvec[i] % N != 0:
                return None
            continue
        if params.val(cvec[i]) < d:
            return None
        if i < sm.cols:
            z[i] = cvec[i] // p ** d
    return [sum(sm.V[i][k] * z[k] for k in range(sm.cols)) % N for i in range(sm.cols)]


# ---------------------------------------------------------------------------
# Module maps.


@dataclass(frozen=True)
class ZpnMatrix:
    """A homomorphism between direct sums of cyclic modules over Z/(p^n).

    source/target hold the cyclic exponents in coordinate order (not
    necessarily sorted); entries are canonical, i.e. entry (i, j) lies
    in [0, p^target[i]).
    """

    params: RingParams
    source: tuple[int, ...]
    target: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p, n, N = self.params.p, self.params.n, self.params.modulus
        src = tuple(int(a) for a in self.source)
        tgt = tuple(int(b) for b in self.target)
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "target", tgt)
        if any(not (1 <= a <= n) for a in src + tgt):
            raise InputError("cyclic exponents must lie in [1, n]")
        if len(self.entries) != len(tgt):
            raise InputError("row count does not match target")
        rows = []
        for i, row in enumerate(self.entries):
            if len(row) != len(src):
                raise InputError("column count does not match source")
            mod = p ** tgt[i]
            canon = tuple(int(x) % mod for x in row)
            for j, x in enumerate(canon):
                need = max(0, tgt[i] - src[j])
                if x % (p ** need) != 0:
                    raise InputError(
                        f"entry ({i},{j}) = {x} violates divisibility p^{need}")
            rows.append(canon)
        object.__setattr__(self, "entries", tuple(rows))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, params, source, target, rows) -> "ZpnMatrix":
        return cls(params, tuple(source), tuple(target),
                   tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, params, source, target) -> "ZpnMatrix":
        return cls(params, tuple(source), tuple(target),
                   tuple(tuple(0 for _ in source) for _ in target))

    @classmethod
    def identity(cls, params, parts) -> "ZpnMatrix":
        parts = tuple(parts)
        return cls(params, parts, parts,
                   tuple(tuple(1 if j == i else 0 for j in range(len(parts)))
                         for i in range(len(parts))))

    # -- structure ---------------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self.target)

    @property
    def cols(self) -> int:
        return len(self.source)

    def apply(self, x) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise InputError("vector length does not match source")
        p = self.params.p
        return tuple(sum(row[j] * x[j] for j in range(self.cols)) % p ** b
                     for row, b in zip(self.entries, self.target))

    def compose(self, other: "ZpnMatrix") -> "ZpnMatrix":
        """self o other (apply other first)."""
        if other.target != self.source:
            raise InputError("composition shape mismatch")
        N = self.params.modulus
        rows = [[sum(self.entries[i][k] * other.entries[k][j]
                     for k in range(self.cols)) % N
                 for j in range(other.cols)]
                for i in range(self.rows)]
        return ZpnMatrix.from_rows(self.params, other.source, self.target, rows)

    def add(self, other: "ZpnMatrix") -> "ZpnMatrix":
        if other.source != self.source or other.target != self.target:
            raise InputError("sum shape mismatch")
        rows = [[(a + b) % self.params.modulus for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)]
        return ZpnMatrix.from_rows(self.params, self.source, self.target, rows)

    def scale(self, c: int) -> "ZpnMatrix":
        rows = [[(c * x) % self.params.modulus for x in r] for r in self.entries]
        return ZpnMatrix.from_rows(self.params, self.source, self.target, rows)

    def neg(self) -> "ZpnMatrix":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.entries)

    def column(self, j) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def direct_sum(self, other: "ZpnMatrix") -> "ZpnMatrix":
        rows = []
        for r in self.entries:
            rows.append(list(r) + [0] * other.cols)
        for r in other.entries:
            rows.append([0] * self.cols + list(r))
        return ZpnMatrix.from_rows(self.params, self.source + other.source,
                                   self.target + other.target, rows)

    def permute(self, row_perm=None, col_perm=None) -> "ZpnMatrix":
        """Reindex coordinates; perm[new_index] = old_index."""
        rp = row_perm if row_perm is not None else list(range(self.rows))
        cp = col_perm if col_perm is not None else list(range(self.cols))
        src = tuple(self.source[j] for j in cp)
        tgt = tuple(self.target[i] for i in rp)
        rows = [[self.entries[i][j] for j in cp] for i in rp]
        return ZpnMatrix.from_rows(self.params, src, tgt, rows)


def scaled_system(f: ZpnMatrix):
    """Lift the congruences f(x) = 0 mod p^{b_i} to equations mod p^n."""
    p, n = f.params.p, f.params.n
    N = f.params.modulus
    return [[(p ** (n - b) * x) % N for x in row]
            for row, b in zip(f.entries, f.target)]


def source_relations(f_source, params: RingParams) -> list[list[int]]:
    p = params.p
    c = len(f_source)
    rels = []
    for j, a in enumerate(f_source):
        if a < params.n:
            rels.append([p ** a if t == j else 0 for t in range(c)])
    return rels


# ---------------------------------------------------------------------------
# Subquotient structure: the workhorse behind kernels, hom groups and
# presentations.


@dataclass(frozen=True)
class ModuleStructure:
    """A subquotient W/R of (Z/p^n)^dim in concrete coordinates.

    `basis[k]` is an ambient representative of the k-th cyclic generator;
    the classes decompose W/R as a direct sum of cyclics of orders
    p^{partition[k]}.
    """

    params: RingParams
    dim: int
    partition: Partition
    basis: tuple[tuple[int, ...], ...]
    _w_dvals: tuple[int, ...]
    _w_U: tuple
    _w_rows: tuple[int, ...]       # smith rows giving W-basis coordinates
    _q_U: tuple
    _q_orders: tuple[int, ...]     # cyclic orders of the W-basis
    _q_keep: tuple[int, ...]       # surviving quotient coordinates, sorted

    def coords_in_span(self, vec):
        """Coordinates of vec in the basis of W, or None if vec is not in W."""
        params = self.params
        N, p, n = params.modulus, params.p, params.n
        y = [sum(self._w_U[i][k] * vec[k] for k in range(self.dim)) % N
             for i in range(len(self._w_U))]
        coords = []
        keep = set(self._w_rows)
        for t, yt in enumerate(y):
            if t in keep:
                d = self._w_dvals[self._w_rows.index(t)]
                if params.val(yt) < d:
                    return None
                coords.append((yt // p ** d) % p ** (n - d))
            elif yt % N != 0:
                return None
        return coords

    def contains(self, vec) -> bool:
        return self.coords_in_span(vec) is not None

    def coords(self, vec):
        """Canonical coordinates of vec + R in the cyclic decomposition."""
        c = self.coords_in_span(vec)
        if c is None:
            return None
        N = self.params.modulus
        s = len(self._q_orders)
        z = [sum(self._q_U[i][t] * c[t] for t in range(s)) % N for i in range(s)]
        p = self.params.p
        return tuple(z[k] % p ** q for k, q in zip(self._q_keep, self.partition))

    def element(self, coords) -> tuple[int, ...]:
        N = self.params.modulus
        out = [0] * self.dim
        for ck, bk in zip(coords, self.basis):
            for i in range(self.dim):
                out[i] = (out[i] + ck * bk[i]) % N
        return tuple(out)

    def is_zero(self) -> bool:
        return len(self.partition) == 0


def module_structure(gens, rels, dim: int, params: RingParams) -> ModuleStructure:
    """Structure of span(gens)/span(rels) inside (Z/p^n)^dim.

    rels must be contained in span(gens); generators and relations are
    column vectors of length dim.
    """
    N, n, p = params.modulus, params.n, params.p
    gmat = [[g[i] % N for g in gens] for i in range(dim)]
    sm = smith_form(gmat, params)

    w_rows, w_dvals, w_basis, q_orders = [], [], [], []
    for t, d in enumerate(sm.dvals):
        if d >= n:
            continue
        w_rows.append(t)
        w_dvals.append(d)
        q_orders.append(n - d)
        w_basis.append(tuple((p ** d * sm.Uinv[i][t]) % N for i in range(dim)))
    w_U = sm.U

    stub = ModuleStructure(params, dim, Partition(()), (), tuple(w_dvals),
                           w_U, tuple(w_rows), (), tuple(q_orders), ())

    rel_coords = []
    for rel in rels:
        c = stub.coords_in_span(rel)
        if c is None:
            raise InputError("relation vector outside the generated span")
        rel_coords.append(c)

    s = len(q_orders)
    qmat = [[0] * (s + len(rel_coords)) for _ in range(s)]
    for t in range(s):
        qmat[t][t] = p ** q_orders[t] % N
    for j, rc in enumerate(rel_coords):
        for t in range(s):
            qmat[t][s + j] = rc[t]
    sm2 = smith_form(qmat, params)

    keep, parts = [], []
    for k in range(s):
        q = sm2.dvals[k] if k < len(sm2.dvals) else n
        if q >= 1:
            keep.append(k)
            parts.append(q)

    # Sort parts weakly decreasing, permuting coordinates consistently.
    order = sorted(range(len(keep)), key=lambda i: -parts[i])
    keep = [keep[i] for i in order]
    parts = [parts[i] for i in order]

    basis = []
    for k in keep:
        cvec = [sm2.Uinv[t][k] % N for t in range(s)]
        amb = [0] * dim
        for t in range(s):
            for i in range(dim):
                amb[i] = (amb[i] + cvec[t] * w_basis[t][i]) % N
        basis.append(tuple(amb))

    return ModuleStructure(params, dim, Partition(tuple(parts)), tuple(basis),
                           tuple(w_dvals), w_U, tuple(w_rows),
                           sm2.U, tuple(q_orders), tuple(keep))


# ---------------------------------------------------------------------------
# The module-level operations.


@dataclass(frozen=True)
class KernelData:
    partition: Partition
    embedding: ZpnMatrix  # kernel (standard form) -> source of f

    def is_zero(self) -> bool:
        return len(self.partition) == 0

    def generators(self):
        return [self.embedding.column(k) for k in range(len(self.partition))]


def kernel(f: ZpnMatrix) -> KernelData:
    """Kernel of f as a submodule of its source, in a split basis."""
    params = f.params
    gens = nullspace_gens(scaled_system(f), params) if f.rows else None
    if gens is None:
        # No constraints: the kernel is the whole source.
        gens = [list(col) for col in mat_identity(f.cols)]
    rels = source_relations(f.source, params)
    ms = module_structure(gens, rels, f.cols, params)
    emb = ZpnMatrix.from_rows(params, tuple(ms.partition), f.source,
                              [[b[i] for b in ms.basis] for i in range(f.cols)])
    return KernelData(ms.partition, emb)


def solve(f: ZpnMatrix, b) -> tuple[int, ...] | None:
    """Lexicographically smallest x with f(x) = b, or None."""
    params = f.params
    N, p = params.modulus, params.p
    n = params.n
    if len(b) != f.rows:
        raise InputError("target vector length mismatch")
    rhs = [(p ** (n - bi) * x) % N for x, bi in zip(b, f.target)]
    x0 = solve_raw(scaled_system(f), rhs, params)
    if x0 is None:
        return None
    gens = nullspace_gens(scaled_system(f), params)
    gens.extend(source_relations(f.source, params))
    if gens:
        H, _ = howell_form(gens, params)
        for row in H:
            j = next((t for t, x in enumerate(row) if x), None)
            if j is None:
                continue
            v = params.val(row[j])
            q = x0[j] // p ** v
            x0 = [(x0[t] - q * row[t]) % N for t in range(f.cols)]
    return tuple(x % p ** a for x, a in zip(x0, f.source))


def hom_basis(source, target, params: RingParams):
    """Generators e_(i,j) of Hom between split modules, with their orders.

    Returns a list of (matrix, order_exponent); every homomorphism is a
    unique combination with coefficient (i, j) in [0, p^min(a_j, b_i)).
    """
    p = params.p
    out = []
    for i, b in enumerate(target):
        for j, a in enumerate(source):
            rows = [[0] * len(source) for _ in target]
            rows[i][j] = p ** max(0, b - a)
            out.append((ZpnMatrix.from_rows(params, tuple(source), tuple(target), rows),
                        min(a, b)))
    return out


def presentation_to_partition(relations, params: RingParams) -> ModuleStructure:
    """Cokernel structure of a relation matrix (rows are relations).

    The returned structure exposes the partition together with the
    change of basis: `coords` maps generator coordinate vectors to the
    cyclic decomposition, `basis` lifts the cyclic generators.
    """
    if relations:
        _check_reduced(relations, params.modulus)
    g = len(relations[0]) if relations else 0
    gens = [list(col) for col in mat_identity(g)]
    rels = [[row[i] % params.modulus for i in range(g)] for row in relations]
    rel_cols = [[rel[i] for i in range(g)] for rel in rels]
    return module_structure(gens, rel_cols, g, params)


def submodule_structure(gens, ambient, params: RingParams) -> ModuleStructure:
    """Structure of the submodule of the ambient split module spanned by gens."""
    dim = len(ambient)
    lifted = [list(g) for g in gens] + source_relations(ambient, params)
    return module_structure(lifted, source_relations(ambient, params), dim, params)


def submodule_contains(gens, ambient, vec, params: RingParams) -> bool:
    return submodule_structure(gens, ambient, params).contains(list(vec))


def submodule_equal(gens_a, gens_b, ambient, params: RingParams) -> bool:
    sa = submodule_structure(gens_a, ambient, params)
    sb = submodule_structure(gens_b, ambient, params)
    if sa.partition != sb.partition:
        return False
    return (all(sa.contains(list(g)) for g in gens_b)
            and all(sb.contains(list(g)) for g in gens_a))


def submodule_intersection(gens_a, gens_b, ambient, params: RingParams):
    """Generators of span(gens_a) ∩ span(gens_b) inside the ambient module.

    Computed from the kernel of (x, y) -> A x - B y.
    """
    ka, kb = len(gens_a), len(gens_b)
    if ka == 0 or kb == 0:
        return []
    n = params.n
    rows = []
    for i, b in enumerate(ambient):
        row = [gens_a[j][i] for j in range(ka)]
        row += [(-gens_b[j][i]) % params.modulus for j in range(kb)]
        rows.append(tuple(x % (params.p ** b) for x in row))
    f = ZpnMatrix.from_rows(params, (n,) * (ka + kb), ambient, rows)
    ker = kernel(f)
    out = []
    for col in ker.generators():
        vec = [0] * len(ambient)
        for j in range(ka):
            for i in range(len(ambient)):
                vec[i] = (vec[i] + col[j] * gens_a[j][i]) % (params.p ** ambient[i])
        if any(vec):
            out.append(tuple(vec))
    return submodule_basis(out, ambient, params)


def submodule_basis(gens, ambient, params: RingParams):
    """A clean generating set realizing the submodule's cyclic decomposition."""
    ms = submodule_structure(gens, ambient, params)
    return [tuple(b[i] % (params.p ** ambient[i]) for i in range(len(ambient)))
            for b in ms.basis]


def module_elements(parts, params: RingParams):
    """All elements of the split module, in lexicographic coordinate order."""
    return itertools.product(*[range(params.p ** a) for a in parts])
