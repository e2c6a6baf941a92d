"""Drinfeld-centre objects realized as tube idempotents.

A half-braiding ``tau`` on a word X gives the graded idempotent with
grade-S component ``d(S)/D2 * tau_S``; its image in the idempotent
completion of the tube category is the centre object ``(X, tau)``.  With a
braiding, the two-sided crossing pattern on ``I ++ J`` produces the family
``eps_xy(I, J)`` whose Hom-spaces, orthogonality and completeness encode
whether the category is modular.  Conversely, arbitrary idempotents are
produced by block-decomposing the tube algebra and their half-braidings
are extracted by rotating through the tube and splitting channel-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .category import CategorySpec, word_channels
from .diagrams import (Morphism, cap_word, compose, cup_word,
                       decompose_resolution, identity, ptrace_left,
                       braid_word, tensor, trace, tree_dims, zero_morphism)
from .errors import (DecompositionFailed, NotBraided, NotHalfBraiding,
                     NotModular, ShapeMismatch, SplitFailed)
from .tube import (TubeAlgebra, TubeMorphism, c_morphism_inv, embed,
                   random_tube_morphism, tube_compose, tube_from_vector,
                   tube_layout, tube_to_vector, unembed)

__all__ = [
    "HalfBraiding", "CentreIdempotent", "ModularData",
    "half_braiding_residual", "braiding_half_braiding",
    "eps_from_half_braiding", "eps_xy", "handle_slide_check",
    "hom_between_idempotents", "idempotent_hom_dim", "completeness_check",
    "s_matrix", "t_matrix", "modular_data", "is_modular",
    "killing_ring_eval", "slice_checks",
    "decompose_tube_algebra", "half_braiding_from_idempotent",
]


@dataclass
class HalfBraiding:
    """A half-braiding on a tensor word: per simple s, ``tau_s : s ++ X -> X ++ s``."""
    object: tuple
    tau: dict

    def spec(self) -> CategorySpec:
        return next(iter(self.tau.values())).spec


def tau_word(hb: HalfBraiding, G) -> Morphism:
    """Extend the half-braiding to a word by multiplicativity."""
    spec = hb.spec()
    G = tuple(spec.word(G))
    X = hb.object
    if not G:
        return identity(spec, X)
    head, rest = G[0], G[1:]
    inner = compose(tensor(hb.tau[head], identity(spec, rest)),
                    tensor(identity(spec, (head,)), tau_word(hb, rest)))
    return inner


def half_braiding_residual(hb: HalfBraiding) -> float:
    """Max violation of the defining identities of a half-braiding.

    Checks that tau at the unit is the identity, that each tau_s is
    invertible channel-wise, and multiplicativity combined with naturality:
    sliding any fusion vertex ``t -> g h`` through tau.
    """
    spec = hb.spec()
    X = hb.object
    n = spec.n_labels
    worst = 0.0
    unit_tau = hb.tau[spec.unit]
    pad_id = Morphism(spec, (spec.unit,) + X, X + (spec.unit,),
                      dict(identity(spec, X).blocks))
    worst = max(worst, (unit_tau - pad_id).norm())
    for s, m in hb.tau.items():
        for k in m.channels():
            blk = m.block(k)
            if blk.shape[0] != blk.shape[1]:
                return float("inf")
            if blk.size:
                sv = np.linalg.svd(blk, compute_uv=False)
                if sv.min() < spec.tol:
                    worst = max(worst, 1.0)
    for g in range(n):
        for h in range(n):
            tgh = tau_word(hb, (g, h))
            for t, b, _ in decompose_resolution(spec, (g, h)):
                lhs = compose(tgh, tensor(b, identity(spec, X)))
                rhs = compose(tensor(identity(spec, X), b), hb.tau[t])
                worst = max(worst, (lhs - rhs).norm())
    return worst


@dataclass
class CentreIdempotent:
    """A tube idempotent with centre-object metadata.

    ``mults[i]`` is the multiplicity of the simple i in the underlying
    object, measured as the rank of the idempotent acting on
    ``Hom_TC([i], X)``.
    """
    eps: TubeMorphism
    mults: dict
    origin: str
    hb: HalfBraiding | None = None
    idempotency_residual: float = float("nan")
    block_size: int | None = None
    twist: complex | None = None

    @property
    def carrier(self) -> tuple:
        return self.eps.src


@dataclass
class ModularData:
    """Unnormalized S and T matrices with a non-singularity verdict."""
    S: np.ndarray
    T: np.ndarray
    singular: bool
    smin: float


# ---------------------------------------------------------------------------
# idempotents from half-braidings

def eps_from_half_braiding(hb: HalfBraiding, origin: str = "from_half_braiding",
                           check: bool = True) -> CentreIdempotent:
    """The graded idempotent with grade-S component ``d(S)/D2 tau_S``."""
    spec = hb.spec()
    X = hb.object
    if check:
        res = half_braiding_residual(hb)
        if res > 1e3 * spec.tol:
            raise NotHalfBraiding(res)
    D2 = spec.pivotal.D2
    comps = {}
    for s, m in hb.tau.items():
        comp = (spec.pivotal.d[s] / D2) * m
        if comp.norm() > spec.tol:
            comps[s] = comp
    eps = TubeMorphism(spec, X, X, comps)
    resid = (tube_compose(eps, eps) - eps).norm()
    return CentreIdempotent(eps=eps, mults=_idempotent_mults(eps), origin=origin,
                            hb=hb, idempotency_residual=resid)


def braiding_half_braiding(spec: CategorySpec, I, J) -> HalfBraiding:
    """The half-braiding on I ++ J: cross over I, then under J."""
    if spec.R is None:
        raise NotBraided(f"category {spec.name!r} has no R-symbols")
    I = tuple(spec.word(I))
    J = tuple(spec.word(J))
    tau = {}
    for s in range(spec.n_labels):
        over = tensor(braid_word(spec, (s,), I), identity(spec, J))
        under = tensor(identity(spec, I), braid_word(spec, (s,), J, under=True))
        tau[s] = compose(under, over)
    return HalfBraiding(object=I + J, tau=tau)


def eps_xy(spec: CategorySpec, I, J) -> CentreIdempotent:
    """The idempotent realizing the centre object attached to the pair (I, J)."""
    I = tuple(spec.word(I))
    J = tuple(spec.word(J))
    ci = eps_from_half_braiding(braiding_half_braiding(spec, I, J),
                                origin=f"from_braiding_pair({I},{J})")
    return ci


def _left_action_matrix(e: TubeMorphism, Y) -> np.ndarray:
    """Matrix of ``h -> e . h`` on ``Hom_TC(Y, src(e))``."""
    spec = e.spec
    _, dim = tube_layout(spec, Y, e.src)
    M = np.zeros((dim, dim), dtype=complex)
    for c in range(dim):
        v = np.zeros(dim)
        v[c] = 1.0
        h = tube_from_vector(spec, Y, e.src, v)
        M[:, c] = tube_to_vector(tube_compose(e, h))
    return M


def _right_action_matrix(e: TubeMorphism, Y) -> np.ndarray:
    """Matrix of ``h -> h . e`` on ``Hom_TC(dst(e), Y)``."""
    spec = e.spec
    _, dim = tube_layout(spec, e.dst, Y)
    M = np.zeros((dim, dim), dtype=complex)
    for c in range(dim):
        v = np.zeros(dim)
        v[c] = 1.0
        h = tube_from_vector(spec, e.dst, Y, v)
        M[:, c] = tube_to_vector(tube_compose(h, e))
    return M


def _rank(M: np.ndarray, tol: float) -> int:
    if not M.size:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(sv > tol * max(1.0, sv[0])))


def _idempotent_mults(e: TubeMorphism) -> dict:
    spec = e.spec
    return {i: _rank(_left_action_matrix(e, (i,)), spec.tol)
            for i in range(spec.n_labels)}


def idempotent_hom_dim(e: CentreIdempotent, Y, side: str) -> int:
    """dim Hom_TC(Y, e) (side='into') or dim Hom_TC(e, Y) (side='out')."""
    spec = e.eps.spec
    if side == "into":
        return _rank(_left_action_matrix(e.eps, tuple(spec.word(Y))), spec.tol)
    return _rank(_right_action_matrix(e.eps, tuple(spec.word(Y))), spec.tol)


def hom_between_idempotents(e1: CentreIdempotent, e2: CentreIdempotent):
    """A basis of ``{h : h = e2 . h . e1}`` inside ``Hom_TC(X1, X2)``."""
    spec = e1.eps.spec
    if e2.eps.spec is not spec:
        raise ShapeMismatch("idempotents from different categories")
    X1, X2 = e1.carrier, e2.carrier
    _, dim = tube_layout(spec, X1, X2)
    P = np.zeros((dim, dim), dtype=complex)
    for c in range(dim):
        v = np.zeros(dim)
        v[c] = 1.0
        h = tube_from_vector(spec, X1, X2, v)
        ph = tube_compose(e2.eps, tube_compose(h, e1.eps))
        P[:, c] = tube_to_vector(ph)
    cols = _column_basis(P, spec.tol)
    return [tube_from_vector(spec, X1, X2, col) for col in cols.T]


def _column_basis(M: np.ndarray, tol: float) -> np.ndarray:
    """Deterministic column-pivoted orthonormal basis of the column space."""
    if not M.size:
        return np.zeros((M.shape[0], 0), dtype=complex)
    work = M.astype(complex).copy()
    scale = max(1.0, float(np.abs(M).max()))
    cols = []
    for _ in range(min(work.shape)):
        norms = np.linalg.norm(work, axis=0)
        j = int(np.argmax(norms))
        if norms[j] <= tol * scale:
            break
        q = work[:, j] / norms[j]
        cols.append(q)
        work -= np.outer(q, q.conj() @ work)
    return np.array(cols).T if cols else np.zeros((M.shape[0], 0), dtype=complex)


def completeness_check(idems) -> dict:
    """Orthogonality, primitivity and the Hom-dimension count for a family.

    A family is a set of primitive orthogonal idempotents when
    ``Hom_TC(e, e')`` is one-dimensional on the diagonal and zero off it;
    it is complete when additionally, for all simple X and Y,
    ``sum_e dim(X -> e) dim(e -> Y)`` equals ``dim Hom_TC(X, Y)``.
    Overlapping idempotents on different carriers are detected by the
    off-diagonal Hom-spaces.
    """
    spec = idems[0].eps.spec
    n = spec.n_labels
    m = len(idems)
    hom_dims = np.zeros((m, m), dtype=int)
    for a, ea in enumerate(idems):
        for b, eb in enumerate(idems):
            hom_dims[a, b] = len(hom_between_idempotents(ea, eb))
    orthogonal = bool(np.array_equal(hom_dims - np.diag(np.diag(hom_dims)),
                                     np.zeros((m, m), dtype=int)))
    primitive = bool(np.array_equal(np.diag(hom_dims), np.ones(m, dtype=int)))
    into = {(i, a): idempotent_hom_dim(e, (i,), "into")
            for i in range(n) for a, e in enumerate(idems)}
    outof = {(a, j): idempotent_hom_dim(e, (j,), "out")
             for j in range(n) for a, e in enumerate(idems)}
    lhs = np.zeros((n, n), dtype=int)
    rhs = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            lhs[i, j] = sum(into[(i, a)] * outof[(a, j)] for a in range(m))
            rhs[i, j] = sum(
                int(np.dot(word_channels(spec, (R, i)), word_channels(spec, (j, R))))
                for R in range(n))
    complete = orthogonal and primitive and bool(np.array_equal(lhs, rhs))
    return {"complete": complete, "orthogonal": orthogonal,
            "primitive": primitive, "hom_dims": hom_dims,
            "lhs": lhs, "rhs": rhs}


# ---------------------------------------------------------------------------
# handle slide

def handle_slide_check(hb: HalfBraiding, alpha: TubeMorphism,
                       mirror: bool = False) -> float:
    """Residual of the handle-slide identity for ``eps . alpha``.

    With ``mirror=True`` checks the sibling identity for ``alpha . eps``
    instead (then ``alpha`` must map out of the carrier).
    """
    spec = hb.spec()
    X = hb.object
    D2 = spec.pivotal.D2
    eps = eps_from_half_braiding(hb, check=False).eps
    if not mirror:
        if alpha.dst != X:
            raise ShapeMismatch("alpha must map into the half-braiding carrier")
        Y = alpha.src
        lhs = tube_compose(eps, alpha)
        out = TubeMorphism(spec, Y, X, {})
        for R in range(spec.n_labels):
            acc = zero_morphism(spec, (R,) + Y, X + (R,))
            for G, aG in alpha.components.items():
                Gd = spec.dual(G)
                s1 = tensor(identity(spec, (R,)),
                            tensor(cup_word(spec, (Gd,)), identity(spec, Y)))
                s2 = tensor(identity(spec, (R, Gd)), aG)
                s3 = tensor(tau_word(hb, (R, Gd)), identity(spec, (G,)))
                s4 = tensor(identity(spec, X + (R,)), cap_word(spec, (G,)))
                acc = acc + compose(s4, compose(s3, compose(s2, s1)))
            acc = (spec.pivotal.d[R] / D2) * acc
            if acc.norm() > spec.tol:
                out = out + TubeMorphism(spec, Y, X, {R: acc})
        return (lhs - out).norm()
    if alpha.src != X:
        raise ShapeMismatch("alpha must map out of the half-braiding carrier")
    Y = alpha.dst
    lhs = tube_compose(alpha, eps)
    out = TubeMorphism(spec, X, Y, {})
    for R in range(spec.n_labels):
        acc = zero_morphism(spec, (R,) + X, Y + (R,))
        for G, bG in alpha.components.items():
            Gd = spec.dual(G)
            s1 = tensor(cup_word(spec, (G,)), identity(spec, (R,) + X))
            s2 = tensor(identity(spec, (G,)), tau_word(hb, (Gd, R)))
            s3 = tensor(bG, identity(spec, (Gd, R)))
            s4 = tensor(identity(spec, Y),
                        tensor(cap_word(spec, (Gd,)), identity(spec, (R,))))
            acc = acc + compose(s4, compose(s3, compose(s2, s1)))
        acc = (spec.pivotal.d[R] / D2) * acc
        if acc.norm() > spec.tol:
            out = out + TubeMorphism(spec, X, Y, {R: acc})
    return (lhs - out).norm()


# ---------------------------------------------------------------------------
# modular data

def s_matrix(spec: CategorySpec, dual_strands: bool = False) -> np.ndarray:
    """Unnormalized S-matrix: quantum traces of the double braidings."""
    if spec.R is None:
        raise NotBraided(f"category {spec.name!r} has no R-symbols")
    n = spec.n_labels
    S = np.zeros((n, n), dtype=complex)
    for I in range(n):
        for J in range(n):
            a, b = (spec.dual(I), spec.dual(J)) if dual_strands else (I, J)
            hopf = compose(braid_word(spec, (b,), (a,)),
                           braid_word(spec, (a,), (b,)))
            S[I, J] = trace(hopf)
    return S


def t_matrix(spec: CategorySpec, dual_strands: bool = False) -> np.ndarray:
    """Diagonal matrix of twist phases theta_I = tr(sigma_{I,I}) / d(I)."""
    if spec.R is None:
        raise NotBraided(f"category {spec.name!r} has no R-symbols")
    n = spec.n_labels
    theta = np.zeros(n, dtype=complex)
    for I in range(n):
        a = spec.dual(I) if dual_strands else I
        theta[I] = trace(braid_word(spec, (a,), (a,))) / spec.pivotal.d[a]
    return np.diag(theta)


def modular_data(spec: CategorySpec) -> ModularData:
    S = s_matrix(spec)
    T = t_matrix(spec)
    sv = np.linalg.svd(S, compute_uv=False)
    tv = np.abs(np.diag(T))
    smin = float(min(sv.min(), tv.min()))
    threshold = np.sqrt(spec.tol) * max(1.0, float(sv.max()))
    return ModularData(S=S, T=T, singular=bool(smin <= threshold), smin=smin)


def is_modular(spec: CategorySpec) -> bool:
    """True iff the modular data is non-singular."""
    return not modular_data(spec).singular


def killing_ring_eval(spec: CategorySpec, R) -> complex:
    """Value of the d-weighted ring of all simples around an R-strand.

    Equals ``delta_{R,unit} D2`` exactly when the category is modular;
    non-modular inputs return whatever the diagram evaluates to.
    """
    if spec.R is None:
        raise NotBraided(f"category {spec.name!r} has no R-symbols")
    R = spec.word([R])[0]
    total = 0.0 + 0.0j
    for S in range(spec.n_labels):
        ring = compose(braid_word(spec, (R,), (S,)), braid_word(spec, (S,), (R,)))
        closed = ptrace_left(ring, 1)
        total += spec.pivotal.d[S] * closed.block(R)[0, 0]
    return complex(total)


def slice_checks(spec: CategorySpec, n_instances: int = 20,
                 seed: int = 0x5EED) -> dict:
    """Residuals of the horizontal and vertical killing-ring slices.

    Both identities require modularity; the horizontal slice is checked on
    all simple pairs, the vertical one on seeded random morphisms between
    pairs of simples.
    """
    from .diagrams import random_morphism
    if spec.R is None:
        raise NotBraided(f"category {spec.name!r} has no R-symbols")
    if not is_modular(spec):
        raise NotModular(f"category {spec.name!r} has singular modular data")
    n = spec.n_labels
    D2 = spec.pivotal.D2
    d = spec.pivotal.d
    rng = np.random.default_rng(seed)

    def ring_around(W: tuple) -> Morphism:
        acc = zero_morphism(spec, W, W)
        for S in range(n):
            m = compose(braid_word(spec, W, (S,)), braid_word(spec, (S,), W))
            acc = acc + d[S] * ptrace_left(m, 1)
        return acc

    worst_h = 0.0
    for x in range(n):
        for y in range(n):
            W = (x, y)
            lhs = ring_around(W)
            rhs = zero_morphism(spec, W, W)
            for T in range(n):
                Td = spec.dual(T)
                left_pairs = decompose_resolution(spec, (x,), channel=T)
                right_pairs = decompose_resolution(spec, (y,), channel=Td)
                if not left_pairs or not right_pairs:
                    continue
                for _, b, bstar in left_pairs:
                    for _, c, cstar in right_pairs:
                        up = compose(tensor(b, c), cup_word(spec, (T,)))
                        down = compose(cap_word(spec, (Td,)), tensor(bstar, cstar))
                        rhs = rhs + (D2 / d[T]) * compose(up, down)
            worst_h = max(worst_h, (lhs - rhs).norm())

    worst_v = 0.0
    for _ in range(n_instances):
        x, y, a, b = rng.integers(0, n, size=4)
        X, Y, A, B = (int(x),), (int(y),), (int(a),), (int(b),)
        alpha = random_morphism(spec, X + Y, A + B, rng)
        if not alpha.blocks:
            continue
        lhs = zero_morphism(spec, X + Y, A + B)
        for S in range(n):
            Sd = spec.dual(S)
            q1 = tensor(cup_word(spec, (S,)), identity(spec, X + Y))
            q2 = tensor(identity(spec, (S,)),
                        tensor(braid_word(spec, (Sd,), X), identity(spec, Y)))
            q3 = tensor(identity(spec, (S,) + X),
                        braid_word(spec, (Sd,), Y, under=True))
            q4 = tensor(identity(spec, (S,)), tensor(alpha, identity(spec, (Sd,))))
            q5 = tensor(identity(spec, (S,) + A), braid_word(spec, B, (Sd,)))
            q6 = tensor(identity(spec, (S,)),
                        tensor(braid_word(spec, A, (Sd,), under=True),
                               identity(spec, B)))
            q7 = tensor(cap_word(spec, (Sd,)), identity(spec, A + B))
            term = q1
            for step in (q2, q3, q4, q5, q6, q7):
                term = compose(step, term)
            lhs = lhs + d[S] * term
        rhs = zero_morphism(spec, X + Y, A + B)
        for T in range(n):
            Td = spec.dual(T)
            b_pairs = decompose_resolution(spec, B, channel=T)
            c_pairs = decompose_resolution(spec, Y, channel=T)
            for _, bb, bbstar in b_pairs:
                for _, cc, ccstar in c_pairs:
                    t1 = tensor(identity(spec, X),
                                tensor(cup_word(spec, (T,)), identity(spec, Y)))
                    t2 = tensor(tensor(identity(spec, X), cc),
                                tensor(identity(spec, (Td,)), ccstar))
                    t3 = tensor(alpha, identity(spec, (Td, T)))
                    t4 = tensor(tensor(identity(spec, A), bbstar),
                                tensor(identity(spec, (Td,)), bb))
                    t5 = tensor(identity(spec, A),
                                tensor(cap_word(spec, (Td,)), identity(spec, B)))
                    term = t1
                    for step in (t2, t3, t4, t5):
                        term = compose(step, term)
                    rhs = rhs + (D2 / d[T]) * term
        worst_v = max(worst_v, (lhs - rhs).norm())
    return {"horizontal_residual": worst_h, "vertical_residual": worst_v,
            "max_residual": max(worst_h, worst_v)}


# ---------------------------------------------------------------------------
# block decomposition of the tube algebra

def _center_basis(A: TubeAlgebra) -> np.ndarray:
    dim = A.dim
    rows = []
    C = A.mult
    for y in range(dim):
        rows.append(C[y, :, :].T - C[:, y, :].T)
    M = np.concatenate(rows, axis=0)
    _, sv, Vh = np.linalg.svd(M)
    null = Vh[np.sum(sv > 1e-10 * max(1.0, sv[0])):].conj()
    return null


def _cluster(values: np.ndarray, gap: float):
    """Single-linkage clusters of complex values at the given radius."""
    m = len(values)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        for j in range(i + 1, m):
            if abs(values[i] - values[j]) <= gap:
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(values[i])
    reps = sorted((np.mean(c) for c in groups.values()),
                  key=lambda z: (z.real, z.imag))
    ok = all(abs(reps[i] - reps[j]) > 10 * gap
             for i in range(len(reps)) for j in range(i))
    return reps, ok


def _spectral_idempotent(A: TubeAlgebra, elem: np.ndarray, unit: np.ndarray,
                         target, others) -> np.ndarray:
    out = unit.copy()
    for mu in others:
        out = A.multiply(out, (elem - mu * unit) / (target - mu))
    return out


def _central_idempotents(A: TubeAlgebra, rng: np.random.Generator):
    """Minimal central idempotents, as common eigenvectors of the center.

    In the regular representation of the commutative semisimple center the
    minimal idempotents are exactly the eigenvectors of a generic element,
    so one small eigendecomposition replaces the numerically fragile
    high-degree spectral-projector polynomial.
    """
    tol = A.spec.tol
    center = _center_basis(A)
    n_blocks = center.shape[0]
    pinv = np.linalg.pinv(center.T)
    for _ in range(8):
        coeffs = rng.standard_normal(n_blocks) + 1j * rng.standard_normal(n_blocks)
        z0 = coeffs @ center
        M = np.array([pinv @ A.multiply(z0, center[al]) for al in range(n_blocks)]).T
        vals, vecs = np.linalg.eig(M)
        scale = max(1.0, float(np.abs(vals).max()))
        reps, ok = _cluster(vals, 1e3 * tol * scale)
        if not ok or len(reps) != n_blocks:
            continue
        out = []
        good = True
        for b in range(n_blocks):
            u = vecs[:, b] @ center
            uu = A.multiply(u, u)
            kappa = (u.conj() @ uu) / (u.conj() @ u)
            if abs(kappa) < 1e3 * tol:
                good = False
                break
            zb = u / kappa
            if np.abs(A.multiply(zb, zb) - zb).max() > 1e3 * tol:
                good = False
                break
            out.append(zb)
        if good:
            total = sum(out)
            if np.abs(total - A.unit).max() > 1e3 * tol:
                raise DecompositionFailed("central idempotents do not resolve the unit")
            return out
    raise DecompositionFailed(
        f"eigenvalue clusters of the central element not separated at {1e3 * tol}")


def decompose_tube_algebra(A: TubeAlgebra, seed: int = 0x5EED):
    """Minimal blocks of the tube algebra as canonical centre idempotents.

    Central idempotents are produced by eigendecomposition of a seeded
    random central element; each block is refined to a primitive idempotent
    in a corner, transported onto a word carrier realizing the underlying
    object, and returned in the normal form built from its extracted
    half-braiding.  Block sizes satisfy ``sum n_b^2 = dim A`` exactly.
    """
    spec = A.spec
    rng = np.random.default_rng(seed)
    tol = spec.tol
    out = []
    sizes = []
    for zb in _central_idempotents(A, rng):
        Lz = A.left_mult_matrix(zb)
        r = _rank(Lz, tol)
        n_b = int(round(np.sqrt(r)))
        if n_b * n_b != r:
            raise DecompositionFailed(f"block rank {r} is not a perfect square")
        sizes.append(n_b)
        e_prim = _primitive_in_block(A, zb, rng)
        ci = _block_normal_form(A, e_prim, n_b, seed=seed)
        out.append(ci)
    if sum(s * s for s in sizes) != A.dim:
        raise DecompositionFailed("block sizes do not resolve the algebra dimension")
    return out


def _corner_coords(A: TubeAlgebra, i: int) -> np.ndarray:
    """The unit of the (i, i) corner: the algebra unit restricted to it."""
    v = A.unit.copy()
    mask = np.zeros(A.dim, dtype=bool)
    mask[A.corner_slices[(i, i)]] = True
    v[~mask] = 0
    return v


def _primitive_in_block(A: TubeAlgebra, zb: np.ndarray,
                        rng: np.random.Generator) -> np.ndarray:
    """A primitive idempotent refining the central idempotent zb."""
    spec = A.spec
    tol = spec.tol
    for i in range(spec.n_labels):
        q = A.multiply(zb, _corner_coords(A, i))
        if np.abs(q).max() > 1e3 * tol:
            break
    else:
        raise DecompositionFailed("central idempotent vanishes on all corners")
    # subalgebra q TA q
    cols = []
    for x in range(A.dim):
        v = np.zeros(A.dim)
        v[x] = 1.0
        cols.append(A.multiply(A.multiply(q, v), q))
    Q = np.array(cols).T
    basis = _column_basis(Q, tol)
    m2 = basis.shape[1]
    m = int(round(np.sqrt(m2)))
    if m * m != m2:
        raise DecompositionFailed("corner subalgebra dimension is not a square")
    if m == 1:
        return q
    for _ in range(8):
        a = basis @ (rng.standard_normal(m2) + 1j * rng.standard_normal(m2))
        # left multiplication restricted to the corner subalgebra
        La = np.array([np.linalg.lstsq(basis, A.multiply(a, basis[:, t]),
                                       rcond=None)[0] for t in range(m2)]).T
        vals = np.linalg.eigvals(La)
        scale = max(1.0, float(np.abs(vals).max()))
        reps, ok = _cluster(vals, 1e3 * tol * scale)
        if ok and len(reps) == m:
            e = _spectral_idempotent(A, a, q, reps[0],
                                     [mu for mu in reps[1:]])
            if np.abs(A.multiply(e, e) - e).max() < 1e3 * tol:
                return e
    raise DecompositionFailed("could not refine the block to a primitive idempotent")


def _coords_to_tube(A: TubeAlgebra, coords: np.ndarray) -> tuple:
    """Interpret corner-supported coordinates as one tube endomorphism."""
    coords = np.asarray(coords).copy()
    scale = float(np.abs(coords).max())
    coords[np.abs(coords) < 1e-9 * scale] = 0
    parts = A.element(coords)
    if len(parts) != 1:
        raise DecompositionFailed("refined idempotent is not corner-supported")
    (key, t), = parts.items()
    if key[0] != key[1]:
        raise DecompositionFailed("refined idempotent is off-diagonal")
    return key[0], t


def _block_normal_form(A: TubeAlgebra, e_coords: np.ndarray, n_b: int,
                       seed: int) -> CentreIdempotent:
    """Transport a primitive corner idempotent to its word carrier."""
    spec = A.spec
    i0, e_t = _coords_to_tube(A, e_coords)
    mults = _idempotent_mults(e_t)
    W = _word_with_channels(spec, mults)
    rng = np.random.default_rng(seed ^ 0xA5A5)
    for _ in range(8):
        x = tube_compose(e_t, random_tube_morphism(spec, W, (i0,), rng))
        y = tube_compose(random_tube_morphism(spec, (i0,), W, rng), e_t)
        t1 = tube_compose(x, y)
        ve, vt = tube_to_vector(e_t), tube_to_vector(t1)
        c = (ve.conj() @ vt) / (ve.conj() @ ve)
        if abs(c) < 1e-6 or np.abs(vt - c * ve).max() > 1e-6 * max(1, abs(c)):
            continue
        e_W = (1.0 / c) * tube_compose(y, x)
        if (tube_compose(e_W, e_W) - e_W).norm() > 1e3 * spec.tol:
            continue
        try:
            hb = half_braiding_from_idempotent(e_W)
        except SplitFailed:
            continue
        ci = eps_from_half_braiding(hb, origin="from_block_decomposition")
        ci.block_size = n_b
        ci.twist = _centre_twist(hb, ci.mults)
        return ci
    raise DecompositionFailed("transport onto the word carrier failed")


def _word_with_channels(spec: CategorySpec, mults: dict) -> tuple:
    """The shortest word whose channel counts realize the multiplicities."""
    want = np.array([mults.get(k, 0) for k in range(spec.n_labels)])
    for length in range(4):
        for tup in product(range(spec.n_labels), repeat=length):
            if np.array_equal(word_channels(spec, tup), want):
                return tup
    raise DecompositionFailed(
        f"no word of length < 4 realizes the underlying object {mults}")


def _centre_twist(hb: HalfBraiding, mults: dict) -> complex:
    """Twist of the centre simple: quantum trace of tau at the carrier itself."""
    spec = hb.spec()
    dZ = sum(mults.get(k, 0) * spec.pivotal.d[k] for k in range(spec.n_labels))
    return complex(trace(tau_word(hb, hb.object)) / dZ)


# ---------------------------------------------------------------------------
# half-braidings from idempotents

def half_braiding_from_idempotent(e) -> HalfBraiding:
    """Extract the half-braiding carried by a full-multiplicity idempotent.

    The carrier word must realize the whole underlying object (the rank of
    the idempotent on ``Hom_TC([k], X)`` equals the number of channels of X
    at k); the splitting is fixed channel-wise by deterministic column
    pivoting, the rotation maps are conjugated through it, and the result
    is assembled as honest morphisms ``s ++ X -> X ++ s``.
    """
    eps = e.eps if isinstance(e, CentreIdempotent) else e
    spec = eps.spec
    if eps.src != eps.dst:
        raise ShapeMismatch("idempotents live in End_TC(X)")
    X = eps.src
    if (tube_compose(eps, eps) - eps).norm() > 1e3 * spec.tol:
        raise SplitFailed("input is not idempotent at tolerance")
    n = spec.n_labels
    dims = tree_dims(spec, X)

    v_basis = {}
    iota = {}
    pi = {}
    for k in range(n):
        nk = dims.get(k, 0)
        if not nk:
            continue
        P = _left_action_matrix(eps, (k,))
        cols = _column_basis(P, spec.tol)
        if cols.shape[1] != nk:
            raise SplitFailed(
                f"rank {cols.shape[1]} at channel {spec.labels[k].id} does not "
                f"fill the carrier ({nk} channels)")
        vs = [tube_from_vector(spec, (k,), X, cols[:, a]) for a in range(nk)]
        v_basis[k] = vs
        ik = np.zeros((nk, nk), dtype=complex)
        for a, v in enumerate(vs):
            ik[:, a] = unembed(v).block(k)[:, 0]
        sv = np.linalg.svd(ik, compute_uv=False)
        if sv.min() < 1e-12 * max(1.0, sv.max()) or sv.max() / sv.min() > 1e12:
            raise SplitFailed("plain part of the splitting is numerically singular")
        iota[k] = ik
        pi[k] = np.linalg.inv(ik)

    tau = {}
    for s in range(n):
        sd = spec.dual(s)
        blocks: dict = {}
        for k in range(n):
            dom = []
            dom_meta = []
            for l in sorted(v_basis):
                for _, u, ustar in decompose_resolution(spec, (s, l), channel=k):
                    phi = compose(tensor(cap_word(spec, (s,)), identity(spec, (l,))),
                                  tensor(identity(spec, (sd,)), u))
                    for b, v in enumerate(v_basis[l]):
                        dom.append(tube_compose(v, embed(phi)))
                        dom_meta.append((l, b, ustar))
            cod = []
            cod_meta = []
            for lp in sorted(v_basis):
                for _, w, wstar in decompose_resolution(spec, (lp, s), channel=k):
                    psi = compose(tensor(identity(spec, (lp,)), cap_word(spec, (sd,))),
                                  tensor(w, identity(spec, (sd,))))
                    for bp, vp in enumerate(v_basis[lp]):
                        cod.append(tube_compose(vp, embed(psi)))
                        cod_meta.append((lp, bp, w))
            if not dom:
                continue
            if not cod:
                raise SplitFailed("rotation target space is empty but source is not")
            rot = c_morphism_inv(spec, (sd,), (k,))
            Mcod = np.array([tube_to_vector(g) for g in cod]).T
            for col, h in enumerate(dom):
                img = tube_to_vector(tube_compose(h, rot))
                coef = np.linalg.lstsq(Mcod, img, rcond=None)[0]
                resid = np.linalg.norm(Mcod @ coef - img)
                if resid > 1e-6 * max(1.0, np.linalg.norm(img)):
                    raise SplitFailed("rotated vector leaves the idempotent image")
                l, b, ustar = dom_meta[col]
                for row, cval in enumerate(coef):
                    if abs(cval) < 1e-13:
                        continue
                    lp, bp, w = cod_meta[row]
                    blocks.setdefault((lp, l), {}).setdefault((bp, b),
                        zero_morphism(spec, (s, l), (lp, s)))
                    blocks[(lp, l)][(bp, b)] = blocks[(lp, l)][(bp, b)] \
                        + cval * compose(w, ustar)
        acc = zero_morphism(spec, (s,) + X, X + (s,))
        for (lp, l), cell in blocks.items():
            for (bp, b), block_m in cell.items():
                inj = Morphism(spec, (lp,), X, {lp: iota[lp][:, bp:bp + 1]})
                prj = Morphism(spec, X, (l,), {l: pi[l][b:b + 1, :]})
                acc = acc + compose(tensor(inj, identity(spec, (s,))),
                                    compose(block_m,
                                            tensor(identity(spec, (s,)), prj)))
        tau[s] = acc
    return HalfBraiding(object=X, tau=tau)
