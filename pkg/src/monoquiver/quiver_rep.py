"""Finite acyclic quivers and their representations over Z/(p^n).

A representation carries one split module per vertex (recorded by its
partition) and one ZpnMatrix per arrow.  Morphism spaces are finite
abelian groups solved out of the commutation constraints; membership in
the monomorphism category is decided by the kernels of the assembled
incoming maps.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from .zpn_core import (
    InputError,
    ModuleStructure,
    Partition,
    RingParams,
    ZpnMatrix,
    hom_basis,
    kernel,
    module_structure,
    nullspace_gens,
    submodule_structure,
)


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver; vertices are indexed 0..vertices-1."""

    vertices: int
    arrows: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        for s, t in arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise InputError(f"arrow ({s},{t}) out of range")
        # Kahn's algorithm; a leftover vertex means a directed cycle.
        indeg = [0] * self.vertices
        for _, t in arrows:
            indeg[t] += 1
        queue = [v for v in range(self.vertices) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for s, t in arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        if seen != self.vertices:
            raise InputError("quiver has a directed cycle")

    def incoming(self, i: int) -> list[int]:
        """Arrow indices into i, sorted by (source vertex, arrow index)."""
        arr = [k for k, (_, t) in enumerate(self.arrows) if t == i]
        return sorted(arr, key=lambda k: (self.arrows[k][0], k))

    def outgoing(self, i: int) -> list[int]:
        return [k for k, (s, _) in enumerate(self.arrows) if s == i]


@functools.lru_cache(maxsize=None)
def all_paths(quiver: Quiver) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """All paths as (start_vertex, arrow sequence), in length-then-lex order.

    Includes the trivial path at every vertex; acyclicity bounds the count.
    """
    paths = [(v, ()) for v in range(quiver.vertices)]
    frontier = list(paths)
    while frontier:
        new = []
        for start, arr in frontier:
            end = quiver.arrows[arr[-1]][1] if arr else start
            for k, (s, _) in enumerate(quiver.arrows):
                if s == end:
                    new.append((start, arr + (k,)))
        paths.extend(new)
        frontier = new
    return tuple(paths)


def path_end(quiver: Quiver, path) -> int:
    start, arr = path
    return quiver.arrows[arr[-1]][1] if arr else start


def paths_into(quiver: Quiver, vertex: int):
    return [p for p in all_paths(quiver) if path_end(quiver, p) == vertex]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rep:
    """A representation of a quiver over Z/(p^n)."""

    quiver: Quiver
    params: RingParams
    modules: tuple[Partition, ...]
    maps: tuple[ZpnMatrix, ...]

    def __post_init__(self):
        if len(self.modules) != self.quiver.vertices:
            raise InputError("one partition per vertex required")
        if len(self.maps) != len(self.quiver.arrows):
            raise InputError("one matrix per arrow required")
        for part in self.modules:
            part.check_bound(self.params.n)
        for k, (s, t) in enumerate(self.quiver.arrows):
            m = self.maps[k]
            if m.source != self.modules[s].parts or m.target != self.modules[t].parts:
                raise InputError(f"matrix shape mismatch on arrow {k}")
            if m.params != self.params:
                raise InputError("ring mismatch")

    @classmethod
    def build(cls, quiver, params, parts_per_vertex, rows_per_arrow) -> "Rep":
        modules = tuple(Partition(tuple(p)) for p in parts_per_vertex)
        maps = []
        for k, (s, t) in enumerate(quiver.arrows):
            maps.append(ZpnMatrix.from_rows(params, modules[s].parts,
                                            modules[t].parts, rows_per_arrow[k]))
        return cls(quiver, params, modules, tuple(maps))

    @classmethod
    def zero(cls, quiver, params) -> "Rep":
        empty = Partition(())
        maps = tuple(ZpnMatrix.zero(params, (), ()) for _ in quiver.arrows)
        return cls(quiver, params, tuple(empty for _ in range(quiver.vertices)), maps)

    @property
    def total_length(self) -> int:
        return sum(part.total for part in self.modules)

    def is_zero(self) -> bool:
        return all(len(part) == 0 for part in self.modules)


@dataclass(frozen=True)
class RepMorphism:
    """A morphism of representations; the squares commute exactly."""

    source: Rep
    target: Rep
    vertex_maps: tuple[ZpnMatrix, ...]

    def __post_init__(self):
        if self.source.quiver != self.target.quiver:
            raise InputError("quiver mismatch")
        if len(self.vertex_maps) != self.source.quiver.vertices:
            raise InputError("one matrix per vertex required")
        for i, m in enumerate(self.vertex_maps):
            if m.source != self.source.modules[i].parts:
                raise InputError(f"vertex {i} source shape mismatch")
            if m.target != self.target.modules[i].parts:
                raise InputError(f"vertex {i} target shape mismatch")
        for k, (s, t) in enumerate(self.source.quiver.arrows):
            left = self.vertex_maps[t].compose(self.source.maps[k])
            right = self.target.maps[k].compose(self.vertex_maps[s])
            if left.entries != right.entries:
                raise InputError(f"square at arrow {k} does not commute")

    @classmethod
    def identity(cls, rep: Rep) -> "RepMorphism":
        return cls(rep, rep, tuple(ZpnMatrix.identity(rep.params, part.parts)
                                   for part in rep.modules))

    @classmethod
    def zero(cls, source: Rep, target: Rep) -> "RepMorphism":
        return cls(source, target,
                   tuple(ZpnMatrix.zero(source.params, ps.parts, pt.parts)
                         for ps, pt in zip(source.modules, target.modules)))

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self o other (apply other first)."""
        if other.target is not self.source and other.target != self.source:
            raise InputError("composition mismatch")
        return RepMorphism(other.source, self.target,
                           tuple(a.compose(b) for a, b in
                                 zip(self.vertex_maps, other.vertex_maps)))

    def add(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           tuple(a.add(b) for a, b in
                                 zip(self.vertex_maps, other.vertex_maps)))

    def scale(self, c: int) -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           tuple(m.scale(c) for m in self.vertex_maps))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.vertex_maps)

    def is_isomorphism(self) -> bool:
        for i in range(self.source.quiver.vertices):
            if self.source.modules[i] != self.target.modules[i]:
                return False
            if not kernel(self.vertex_maps[i]).is_zero():
                return False
        return True


# ---------------------------------------------------------------------------
# mono membership


@dataclass(frozen=True)
class MonoResult:
    ok: bool
    vertex: int | None = None
    witness: tuple[int, ...] | None = None
    blocks: tuple[tuple[int, int], ...] | None = None  # (arrow, width) layout

    def __bool__(self):
        return self.ok


def assembled_incoming(rep: Rep, i: int):
    """The map (+)_{t(a)=i} M_{s(a)} -> M_i, with its block layout."""
    arrows = rep.quiver.incoming(i)
    src_shape: tuple[int, ...] = ()
    cols: list[list[int]] = [[] for _ in rep.modules[i].parts]
    blocks = []
    for k in arrows:
        s = rep.quiver.arrows[k][0]
        src_shape = src_shape + rep.modules[s].parts
        blocks.append((k, len(rep.modules[s].parts)))
        for r, row in enumerate(rep.maps[k].entries):
            cols[r].extend(row)
    mat = ZpnMatrix.from_rows(rep.params, src_shape, rep.modules[i].parts, cols)
    return mat, tuple(blocks)


def is_mono(rep: Rep) -> MonoResult:
    """Membership in the monomorphism category, with a kernel witness."""
    for i in range(rep.quiver.vertices):
        mat, blocks = assembled_incoming(rep, i)
        if mat.cols == 0:
            continue
        ker = kernel(mat)
        if not ker.is_zero():
            return MonoResult(False, i, ker.embedding.column(0), blocks)
    return MonoResult(True)


# ---------------------------------------------------------------------------
# hom spaces


@dataclass(frozen=True)
class HomSpace:
    """Hom(M, N) as a finite abelian group in canonical coordinates.

    Every morphism is a unique combination sum c_k * generators[k] with
    c_k in [0, p^orders[k]).
    """

    source: Rep
    target: Rep
    generators: tuple[RepMorphism, ...]
    orders: tuple[int, ...]
    _structure: ModuleStructure
    _unknown_orders: tuple[int, ...]
    _layout: tuple  # (vertex, row, col, shift) per unknown

    @property
    def order_exponent(self) -> int:
        return sum(self.orders)

    def zero(self) -> RepMorphism:
        return RepMorphism.zero(self.source, self.target)

    def element(self, coords) -> RepMorphism:
        out = self.zero()
        for c, g in zip(coords, self.generators):
            if c:
                out = out.add(g.scale(c))
        return out

    def coords(self, morphism: RepMorphism):
        vec = self._unknown_vector(morphism)
        c = self._structure.coords(vec)
        if c is None:
            raise InputError("morphism does not satisfy the constraints")
        return c

    def _unknown_vector(self, morphism: RepMorphism):
        p = self.params.p
        vec = []
        for (v, r, cidx, shift) in self._layout:
            entry = morphism.vertex_maps[v].entries[r][cidx]
            vec.append(entry // p ** shift)
        return vec

    @property
    def params(self) -> RingParams:
        return self.source.params

    def random(self, rng) -> RepMorphism:
        return self.element([rng.randrange(self.params.p ** o) for o in self.orders])

    def iter_all(self):
        import itertools as _it
        for coords in _it.product(*[range(self.params.p ** o) for o in self.orders]):
            yield self.element(coords)


def hom_space(source: Rep, target: Rep) -> HomSpace:
    if source.quiver != target.quiver or source.params != target.params:
        raise InputError("hom requires matching quiver and ring")
    params = source.params
    p, n, N = params.p, params.n, params.modulus

    bases = []   # per vertex: list of (matrix, order)
    layout = []  # flattened unknowns
    offsets = []
    for v in range(source.quiver.vertices):
        b = hom_basis(source.modules[v].parts, target.modules[v].parts, params)
        offsets.append(len(layout))
        bases.append(b)
        a_parts = source.modules[v].parts
        b_parts = target.modules[v].parts
        for i in range(len(b_parts)):
            for j in range(len(a_parts)):
                layout.append((v, i, j, max(0, b_parts[i] - a_parts[j])))
    orders = []
    for b in bases:
        orders.extend(o for _, o in b)
    dim = len(layout)

    # One congruence per arrow and matrix slot, lifted to Z/(p^n).
    rows = []
    for k, (s, t) in enumerate(source.quiver.arrows):
        h_src = source.maps[k]
        h_tgt = target.maps[k]
        tparts = target.modules[t].parts
        for r in range(len(tparts)):
            for c in range(len(source.modules[s].parts)):
                lift = p ** (n - tparts[r])
                row = [0] * dim
                for u, (g, _) in enumerate(bases[t]):
                    coeff = g.compose(h_src).entries[r][c]
                    row[offsets[t] + u] = (row[offsets[t] + u] + lift * coeff) % N
                for u, (g, _) in enumerate(bases[s]):
                    coeff = h_tgt.compose(g).entries[r][c]
                    row[offsets[s] + u] = (row[offsets[s] + u] - lift * coeff) % N
                if any(row):
                    rows.append(row)

    if rows:
        gens = nullspace_gens(rows, params)
    else:
        gens = [[1 if i == u else 0 for i in range(dim)] for u in range(dim)]
    rels = []
    for u, o in enumerate(orders):
        if o < n:
            rels.append([p ** o if i == u else 0 for i in range(dim)])
    ms = module_structure(gens, rels, dim, params)

    flat_gens = [g for b in bases for g, _ in b]
    generators = []
    for bvec in ms.basis:
        vmaps = []
        idx = 0
        for v in range(source.quiver.vertices):
            block = len(source.modules[v]) * len(target.modules[v])
            acc = ZpnMatrix.zero(params, source.modules[v].parts,
                                 target.modules[v].parts)
            for u in range(idx, idx + block):
                if bvec[u]:
                    acc = acc.add(flat_gens[u].scale(bvec[u]))
            vmaps.append(acc)
            idx += block
        generators.append(RepMorphism(source, target, tuple(vmaps)))

    return HomSpace(source, target, tuple(generators), ms.partition.parts,
                    ms, tuple(orders), tuple(layout))


def end_identity_coords(hom: HomSpace) -> tuple[int, ...]:
    return hom.coords(RepMorphism.identity(hom.source))


# ---------------------------------------------------------------------------
# injectives and the stable structure


def f_shriek(module: Partition, vertex: int, quiver: Quiver,
             params: RingParams) -> Rep:
    """The left-adjoint extension of a module placed at one vertex.

    Vertex k carries one copy of the module per path vertex -> k; each
    arrow acts by pairing the path p with the extended path (arrow o p).
    """
    module.check_bound(params.n)
    copies = {k: [p for p in paths_into(quiver, k) if p[0] == vertex]
              for k in range(quiver.vertices)}
    shapes = {k: tuple(a for _ in copies[k] for a in module.parts)
              for k in range(quiver.vertices)}
    m = len(module.parts)

    raw_maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        rows = [[0] * len(shapes[s]) for _ in shapes[t]]
        for ci, ppath in enumerate(copies[s]):
            extended = (ppath[0], ppath[1] + (a,))
            for cj, qpath in enumerate(copies[t]):
                if qpath == extended:
                    for d in range(m):
                        rows[cj * m + d][ci * m + d] = 1
        raw_maps.append(rows)

    perms = {k: sorted(range(len(shapes[k])), key=lambda i: -shapes[k][i])
             for k in range(quiver.vertices)}
    modules = tuple(Partition(tuple(shapes[k][i] for i in perms[k]))
                    for k in range(quiver.vertices))
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        mat = ZpnMatrix.from_rows(params, shapes[s], shapes[t], raw_maps[a])
        maps.append(mat.permute(row_perm=perms[t], col_perm=perms[s]))
    return Rep(quiver, params, modules, tuple(maps))


def is_injective_object(rep: Rep) -> bool:
    """Injectivity in the monomorphism category: mono with injective vertices."""
    n = rep.params.n
    if not all(a == n for part in rep.modules for a in part):
        return False
    return bool(is_mono(rep))


@dataclass(frozen=True)
class StableRep:
    """A representation with no injective vertex summands (all parts < n)."""

    quiver: Quiver
    params: RingParams
    modules: tuple[Partition, ...]
    maps: tuple[ZpnMatrix, ...]

    def __post_init__(self):
        for part in self.modules:
            if part.parts and part.parts[0] > self.params.n - 1:
                raise InputError("stable representation has a part of maximal order")
        # delegate shape checks to the Rep constructor
        Rep(self.quiver, self.params, self.modules, self.maps)


def stable_restrict(rep: Rep) -> StableRep:
    """Split off every cyclic vertex summand of maximal order p^n.

    The vertex modules are stored split, so the summands of order p^n are
    coordinate-aligned; the residual arrow maps are the corresponding
    submatrices (the representative with injective blocks zeroed).
    """
    n = rep.params.n
    keep = {v: [i for i, a in enumerate(part.parts) if a < n]
            for v, part in enumerate(rep.modules)}
    modules = tuple(Partition(tuple(rep.modules[v].parts[i] for i in keep[v]))
                    for v in range(rep.quiver.vertices))
    maps = []
    for k, (s, t) in enumerate(rep.quiver.arrows):
        rows = [[rep.maps[k].entries[i][j] for j in keep[s]] for i in keep[t]]
        maps.append(ZpnMatrix.from_rows(rep.params, modules[s].parts,
                                        modules[t].parts, rows))
    return StableRep(rep.quiver, rep.params, modules, tuple(maps))


def hat_lift(stable: StableRep) -> Rep:
    """Any representative lift; the stored matrices already are one."""
    return Rep(stable.quiver, stable.params, stable.modules, stable.maps)


@dataclass(frozen=True)
class StableHom:
    hom: HomSpace
    ideal_generators: tuple[RepMorphism, ...]
    ideal_partition: Partition
    quotient_order_exponent: int


def stable_hom(source: Rep, target: Rep) -> StableHom:
    """Hom(M, N) together with the subgroup of maps factoring through an
    injective object of the monomorphism category.

    The ideal is generated by all composites through the indecomposable
    injectives f_!(Z/p^n at v); a map through any injective decomposes
    into such composites.
    """
    hom = hom_space(source, target)
    params = source.params
    coords_list = []
    morphs = []
    for v in range(source.quiver.vertices):
        env = f_shriek(Partition((params.n,)), v, source.quiver, params)
        into = hom_space(source, env)
        outof = hom_space(env, target)
        for h in into.generators:
            for g in outof.generators:
                comp = g.compose(h)
                if not comp.is_zero():
                    coords_list.append(list(hom.coords(comp)))
                    morphs.append(comp)
    if hom.orders:
        ms = submodule_structure(coords_list, hom.orders, params)
        ideal_partition = ms.partition
    else:
        ideal_partition = Partition(())
    return StableHom(hom, tuple(morphs), ideal_partition,
                     hom.order_exponent - ideal_partition.total)


# ---------------------------------------------------------------------------
# direct sums


@dataclass(frozen=True)
class SumData:
    rep: Rep
    include_left: RepMorphism
    include_right: RepMorphism
    project_left: RepMorphism
    project_right: RepMorphism


def direct_sum(left: Rep, right: Rep) -> SumData:
    if left.quiver != right.quiver or left.params != right.params:
        raise InputError("direct sum requires matching quiver and ring")
    params = left.params
    quiver = left.quiver
    perms = {}
    modules = []
    for v in range(quiver.vertices):
        combined = left.modules[v].parts + right.modules[v].parts
        perm = sorted(range(len(combined)), key=lambda i: -combined[i])
        perms[v] = perm
        modules.append(Partition(tuple(combined[i] for i in perm)))
    maps = []
    for k, (s, t) in enumerate(quiver.arrows):
        block = left.maps[k].direct_sum(right.maps[k])
        maps.append(block.permute(row_perm=perms[t], col_perm=perms[s]))
    total = Rep(quiver, params, tuple(modules), tuple(maps))

    incl_l, incl_r, proj_l, proj_r = [], [], [], []
    for v in range(quiver.vertices):
        nl = len(left.modules[v].parts)
        combined = left.modules[v].parts + right.modules[v].parts
        perm = perms[v]
        pos = {old: new for new, old in enumerate(perm)}
        li = [[0] * nl for _ in perm]
        ri = [[0] * (len(combined) - nl) for _ in perm]
        for old in range(len(combined)):
            if old < nl:
                li[pos[old]][old] = 1
            else:
                ri[pos[old]][old - nl] = 1
        incl_l.append(ZpnMatrix.from_rows(params, left.modules[v].parts,
                                          modules[v].parts, li))
        incl_r.append(ZpnMatrix.from_rows(params, right.modules[v].parts,
                                          modules[v].parts, ri))
        proj_l.append(ZpnMatrix.from_rows(
            params, modules[v].parts, left.modules[v].parts,
            [[1 if pos[j] == c else 0 for c in range(len(perm))]
             for j in range(nl)]))
        proj_r.append(ZpnMatrix.from_rows(
            params, modules[v].parts, right.modules[v].parts,
            [[1 if pos[nl + j] == c else 0 for c in range(len(perm))]
             for j in range(len(combined) - nl)]))
    return SumData(total,
                   RepMorphism(left, total, tuple(incl_l)),
                   RepMorphism(right, total, tuple(incl_r)),
                   RepMorphism(total, left, tuple(proj_l)),
                   RepMorphism(total, right, tuple(proj_r)))


def direct_sum_list(reps) -> Rep:
    reps = list(reps)
    if not reps:
        raise InputError("empty direct sum needs an ambient quiver")
    acc = reps[0]
    for other in reps[1:]:
        acc = direct_sum(acc, other).rep
    return acc


# ---------------------------------------------------------------------------
# seeded random representations (shared by tests and the CLI fuzz paths)


def random_rep(rng, quiver: Quiver, params: RingParams, max_parts: int = 2,
               allow_empty: bool = True) -> Rep:
    p, n = params.p, params.n
    modules = []
    for _ in range(quiver.vertices):
        k = rng.randrange(0 if allow_empty else 1, max_parts + 1)
        modules.append(Partition(tuple(sorted(
            (rng.randrange(1, n + 1) for _ in range(k)), reverse=True))))
    maps = []
    for s, t in quiver.arrows:
        rows = []
        for b in modules[t].parts:
            row = []
            for a in modules[s].parts:
                need = max(0, b - a)
                row.append(p ** need * rng.randrange(p ** (b - need)))
            rows.append(row)
        maps.append(ZpnMatrix.from_rows(params, modules[s].parts,
                                        modules[t].parts, rows))
    return Rep(quiver, params, tuple(modules), tuple(maps))
