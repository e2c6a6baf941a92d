"""The tube category: annular morphisms between tensor words.

A tube morphism ``X -> Y`` is an R-graded family of plain morphisms
``f_R : R ++ X -> Y ++ R`` over the simple labels R; composition stacks
annuli, which in the graded picture resolves the two grading strands into
simples through dual bases.  The endomorphism algebra of the sum of all
simples is Ocneanu's tube algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .category import CategorySpec, hom_dim
from .diagrams import (Morphism, cap_word, compose, cup_word,
                       decompose_resolution, identity, random_morphism,
                       tensor, tree_dims, zero_morphism)
from .errors import ShapeMismatch

__all__ = [
    "TubeMorphism", "TubeAlgebra",
    "tube_hom_dim", "embed", "unembed", "tube_identity", "tube_compose",
    "lift", "c_morphism", "c_morphism_inv", "tube_algebra",
    "tube_layout", "tube_to_vector", "tube_from_vector", "random_tube_morphism",
]


@dataclass
class TubeMorphism:
    """An element of ``Hom_TC(src, dst) = sum_R Hom(R ++ src, dst ++ R)``.

    ``components[R]`` is a plain :class:`Morphism`; absent grades are zero.
    """
    spec: CategorySpec
    src: tuple
    dst: tuple
    components: dict

    def component(self, R: int) -> Morphism:
        c = self.components.get(R)
        if c is not None:
            return c
        return zero_morphism(self.spec, (R,) + self.src, self.dst + (R,))

    def norm(self) -> float:
        vals = [c.norm() for c in self.components.values()]
        return float(max(vals)) if vals else 0.0

    def prune(self, threshold: float | None = None) -> "TubeMorphism":
        thr = self.spec.tol if threshold is None else threshold
        comps = {R: c for R, c in self.components.items() if c.norm() > thr}
        return replace(self, components=comps)

    def __add__(self, other: "TubeMorphism") -> "TubeMorphism":
        if (self.spec is not other.spec or self.src != other.src
                or self.dst != other.dst):
            raise ShapeMismatch("tube morphisms are not parallel")
        comps = dict(self.components)
        for R, c in other.components.items():
            comps[R] = comps[R] + c if R in comps else c
        return replace(self, components=comps)

    def __sub__(self, other: "TubeMorphism") -> "TubeMorphism":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "TubeMorphism":
        return replace(self, components={R: scalar * c
                                         for R, c in self.components.items()})

    __rmul__ = __mul__


def tube_hom_dim(spec: CategorySpec, X, Y) -> int:
    """dim Hom_TC(X, Y) = sum_R dim Hom(R ++ X, Y ++ R)."""
    X = tuple(spec.word(X))
    Y = tuple(spec.word(Y))
    return sum(hom_dim(spec, (R,) + X, Y + (R,)) for R in range(spec.n_labels))


def _pad_unit(f: Morphism) -> Morphism:
    """Reinterpret ``f : X -> Y`` as ``unit ++ X -> Y ++ unit``.

    The canonical tree bases of the padded words are in order-preserving
    bijection with the original ones, so the blocks carry over unchanged.
    """
    spec = f.spec
    src = (spec.unit,) + f.src
    dst = f.dst + (spec.unit,)
    return Morphism(spec, src, dst, dict(f.blocks))


def _strip_unit(c: Morphism) -> Morphism:
    spec = c.spec
    return Morphism(spec, c.src[1:], c.dst[:-1], dict(c.blocks))


def embed(f: Morphism) -> TubeMorphism:
    """The inclusion of a plain morphism as the unit-graded tube morphism."""
    return TubeMorphism(f.spec, f.src, f.dst, {f.spec.unit: _pad_unit(f)})


def unembed(t: TubeMorphism) -> Morphism:
    """The plain part (unit-grade component) of a tube morphism."""
    return _strip_unit(t.component(t.spec.unit))


def tube_identity(spec: CategorySpec, X) -> TubeMorphism:
    return embed(identity(spec, X))


def zero_tube(spec: CategorySpec, X, Y) -> TubeMorphism:
    return TubeMorphism(spec, tuple(spec.word(X)), tuple(spec.word(Y)), {})


def tube_compose(g: TubeMorphism, f: TubeMorphism) -> TubeMorphism:
    """Annular stacking, resolved into simple grades.

    For each output grade T this sums, over grades S of g, R of f and the
    dual-basis pairs (b, b*) of Hom(T, S ++ R), the conjugation of
    ``(g_S (x) id_R) . (id_S (x) f_R)`` by b and b*.
    """
    spec = f.spec
    if g.spec is not spec:
        raise ShapeMismatch("tube morphisms from different categories")
    if f.dst != g.src:
        raise ShapeMismatch(f"cannot compose {g.src} after {f.dst}")
    X, Z = f.src, g.dst
    out = zero_tube(spec, X, Z)
    for S, gS in g.components.items():
        for R, fR in f.components.items():
            mid = compose(tensor(gS, identity(spec, (R,))),
                          tensor(identity(spec, (S,)), fR))
            for T, b, bstar in decompose_resolution(spec, (S, R)):
                term = compose(tensor(identity(spec, Z), bstar),
                               compose(mid, tensor(b, identity(spec, X))))
                out = out + TubeMorphism(spec, X, Z, {T: term})
    return out.prune()


def lift(spec: CategorySpec, alpha: Morphism, G) -> TubeMorphism:
    """The tube morphism with grading word G determined by one plain morphism.

    ``alpha`` must live in ``Hom(G ++ X, Y ++ G)``; the result has grade-S
    component ``(id_Y (x) b*) . alpha . (b (x) id_X)`` summed over a dual
    basis of ``Hom(S, G)``.  For simple G this is injection into grade G.
    """
    G = tuple(spec.word(G))
    n = len(G)
    if alpha.src[:n] != G or alpha.dst[len(alpha.dst) - n:] != G:
        raise ShapeMismatch("alpha does not have the stated G ++ X -> Y ++ G shape")
    X = alpha.src[n:]
    Y = alpha.dst[:len(alpha.dst) - n]
    out = zero_tube(spec, X, Y)
    for S, b, bstar in decompose_resolution(spec, G):
        comp = compose(tensor(identity(spec, Y), bstar),
                       compose(alpha, tensor(b, identity(spec, X))))
        out = out + TubeMorphism(spec, X, Y, {S: comp})
    return out.prune()


def c_morphism(spec: CategorySpec, G, X) -> TubeMorphism:
    """The rotation ``G ++ X -> X ++ G`` carrying G around the back of the tube.

    Built as the lift, graded by the dual word of G, of the bent identity
    strands; no boxes appear in the underlying diagram.  Satisfies
    ``c(H, X++G) . c(G, H++X) = c(G++H, X)`` and inverts :func:`c_morphism_inv`.
    """
    G = tuple(spec.word(G))
    X = tuple(spec.word(X))
    Gd = spec.dual_word(G)
    alpha = compose(tensor(identity(spec, X), cup_word(spec, G)),
                    tensor(cap_word(spec, G), identity(spec, X)))
    return lift(spec, alpha, Gd)


def c_morphism_inv(spec: CategorySpec, G, X) -> TubeMorphism:
    """The opposite rotation ``X ++ G -> G ++ X``, graded by G itself.

    Its underlying diagram is the identity on ``G ++ X ++ G`` read as an
    element of ``Hom(G (x) (X ++ G), (G ++ X) (x) G)``.
    """
    G = tuple(spec.word(G))
    X = tuple(spec.word(X))
    return lift(spec, identity(spec, G + X + G), G)


# ---------------------------------------------------------------------------
# hom-space vectorization

def tube_layout(spec: CategorySpec, X, Y):
    """Deterministic flat layout of ``Hom_TC(X, Y)``.

    Returns ``(entries, dim)`` where entries are ``(R, k, nrows, ncols,
    offset)`` ordered by grade then channel.
    """
    X = tuple(spec.word(X))
    Y = tuple(spec.word(Y))
    key = ("tube_layout", X, Y)
    cached = spec._cache.get(key)
    if cached is not None:
        return cached
    entries = []
    off = 0
    for R in range(spec.n_labels):
        ds = tree_dims(spec, (R,) + X)
        dt = tree_dims(spec, Y + (R,))
        for k in sorted(set(ds) & set(dt)):
            entries.append((R, k, dt[k], ds[k], off))
            off += dt[k] * ds[k]
    spec._cache[key] = (entries, off)
    return entries, off


def tube_to_vector(t: TubeMorphism) -> np.ndarray:
    entries, dim = tube_layout(t.spec, t.src, t.dst)
    v = np.zeros(dim, dtype=complex)
    for R, k, nr, nc, off in entries:
        comp = t.components.get(R)
        if comp is None:
            continue
        b = comp.blocks.get(k)
        if b is not None:
            v[off:off + nr * nc] = b.reshape(-1)
    return v


def tube_from_vector(spec: CategorySpec, X, Y, v) -> TubeMorphism:
    X = tuple(spec.word(X))
    Y = tuple(spec.word(Y))
    entries, dim = tube_layout(spec, X, Y)
    comps: dict = {}
    for R, k, nr, nc, off in entries:
        blk = np.asarray(v[off:off + nr * nc], dtype=complex).reshape(nr, nc)
        if not blk.size or not np.abs(blk).max():
            continue
        comp = comps.setdefault(R, {})
        comp[k] = blk
    return TubeMorphism(spec, X, Y, {
        R: Morphism(spec, (R,) + X, Y + (R,), blocks)
        for R, blocks in comps.items()})


def random_tube_morphism(spec: CategorySpec, X, Y, rng: np.random.Generator
                         ) -> TubeMorphism:
    X = tuple(spec.word(X))
    Y = tuple(spec.word(Y))
    comps = {}
    for R in range(spec.n_labels):
        m = random_morphism(spec, (R,) + X, Y + (R,), rng)
        if m.blocks:
            comps[R] = m
    return TubeMorphism(spec, X, Y, comps)


# ---------------------------------------------------------------------------
# the tube algebra

@dataclass
class TubeAlgebra:
    """Ocneanu's tube algebra ``End_TC(sum of all simples)`` in a fixed basis.

    ``basis[x]`` is ``(i, j, R, k, r, c)``: a single matrix unit of the
    grade-R component of ``Hom_TC([i], [j])``.  ``mult[x, y, z]`` holds the
    structure constants of ``basis_x . basis_y`` (composition; zero whenever
    the objects mismatch).
    """
    spec: CategorySpec
    basis: list
    mult: np.ndarray
    unit: np.ndarray
    corner_slices: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coords) -> dict:
        """Group a coordinate vector into TubeMorphisms per (i, j) corner."""
        out = {}
        for (i, j), sl in self.corner_slices.items():
            if sl.start == sl.stop:
                continue
            sub = np.zeros(len(self.basis), dtype=complex)
            sub[sl] = np.asarray(coords)[sl]
            if not np.abs(sub[sl]).max():
                continue
            t = zero_tube(self.spec, (i,), (j,))
            for x in range(sl.start, sl.stop):
                if not sub[x]:
                    continue
                t = t + sub[x] * self._basis_tube(x)
            out[(i, j)] = t
        return out

    def _basis_tube(self, x: int) -> TubeMorphism:
        i, j, R, k, r, c = self.basis[x]
        spec = self.spec
        nr = tree_dims(spec, (j, R))[k]
        nc = tree_dims(spec, (R, i))[k]
        blk = np.zeros((nr, nc), dtype=complex)
        blk[r, c] = 1.0
        return TubeMorphism(spec, (i,), (j,),
                            {R: Morphism(spec, (R, i), (j, R), {k: blk})})

    def multiply(self, u, v) -> np.ndarray:
        return np.einsum("x,y,xyz->z", np.asarray(u), np.asarray(v), self.mult)

    def left_mult_matrix(self, u) -> np.ndarray:
        return np.einsum("x,xyz->zy", np.asarray(u), self.mult)


def tube_algebra(spec: CategorySpec) -> TubeAlgebra:
    """Structure constants of the tube algebra in the deterministic basis."""
    key = "tube_algebra"
    cached = spec._cache.get(key)
    if cached is not None:
        return cached
    n = spec.n_labels
    basis = []
    corner_slices = {}
    for i in range(n):
        for j in range(n):
            start = len(basis)
            entries, _ = tube_layout(spec, (i,), (j,))
            for R, k, nr, nc, off in entries:
                for r in range(nr):
                    for c in range(nc):
                        basis.append((i, j, R, k, r, c))
            corner_slices[(i, j)] = slice(start, len(basis))
    dim = len(basis)
    index = {}
    for x, (i, j, R, k, r, c) in enumerate(basis):
        index[(i, j, R, k, r, c)] = x

    algebra = TubeAlgebra(spec, basis, np.zeros((dim, dim, dim), dtype=complex),
                          np.zeros(dim, dtype=complex), corner_slices)

    def coords_of(t: TubeMorphism, i: int, j: int) -> np.ndarray:
        v = np.zeros(dim, dtype=complex)
        entries, _ = tube_layout(spec, (i,), (j,))
        for R, k, nr, nc, off in entries:
            comp = t.components.get(R)
            blk = comp.blocks.get(k) if comp is not None else None
            if blk is None:
                continue
            for r in range(nr):
                for c in range(nc):
                    if blk[r, c]:
                        v[index[(i, j, R, k, r, c)]] = blk[r, c]
        return v

    for y, (i, j, R, k, r, c) in enumerate(basis):
        fy = algebra._basis_tube(y)
        for x, (i2, j2, *_rest) in enumerate(basis):
            if i2 != j:
                continue
            prod = tube_compose(algebra._basis_tube(x), fy)
            algebra.mult[x, y] = coords_of(prod, i, j2)
    for i in range(n):
        algebra.unit += coords_of(tube_identity(spec, (i,)), i, i)
    algebra.mult.flags.writeable = False
    algebra.unit.flags.writeable = False
    spec._cache[key] = algebra
    return algebra
