"""
Euclidean vector bundles with metric connections and the generalized
Cheeger-Gromoll metrics h_{p,q} on their total spaces.

Fiber data is expressed in a local frame (e_1..e_r) of the bundle:
    gram(x)[a, b]    = <e_a, e_b>_E
    conn(x)[i, j, l] = Gamma^l_ij,  nabla_{d_i} e_j = sum_l Gamma^l_ij e_l
Both callables accept numpy vectors and jets, so the total-space metric can
be differentiated exactly by the oracle.

Total-space coordinates are (x_1..x_n, mu_1..mu_r) for the point
sum_j mu_j e_j(x).
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from ..core.errors import InvalidParameterError
from ..core.jets import ArrayLike, Jet, block, concatenate, contract, transpose
from ..core.oracle import Convention, MetricField
from .so_algebra import SkewEndomorphism, so_coordinates, so_matrix, so_pairs, wedge
from .space_forms import (
    SpaceForm,
    conformal_factor,
    levi_civita_frame_coefficients,
    log_gradient,
    orthonormal_frame,
    random_points,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CGParams:
    """Parameters (p, q) of h_{p,q}; q >= 0."""

    p: float
    q: float

    def __post_init__(self):
        if not (np.isfinite(self.p) and np.isfinite(self.q)):
            raise InvalidParameterError(f"p and q must be finite, got ({self.p}, {self.q})")
        if self.q < 0:
            raise InvalidParameterError(f"q must be >= 0, got {self.q}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    @classmethod
    def sasaki(cls) -> "CGParams":
        return cls(0.0, 0.0)

    @classmethod
    def cheeger_gromoll(cls) -> "CGParams":
        return cls(1.0, 1.0)

    @classmethod
    def stereographic(cls) -> "CGParams":
        return cls(2.0, 0.0)

    @property
    def label(self) -> str:
        return f"({self.p:g},{self.q:g})"


@dataclass(frozen=True)
class AtiyahParams:
    """Fiber product parameter k > 0 of AO(M, k)."""

    k: float

    def __post_init__(self):
        if not (np.isfinite(self.k) and self.k > 0):
            raise InvalidParameterError(f"k must be > 0, got {self.k}")
        object.__setattr__(self, "k", float(self.k))

    @staticmethod
    def rank(n: int) -> int:
        return n * (n + 1) // 2


@dataclass(frozen=True, eq=False)
class EuclideanBundle:
    base: Union[SpaceForm, MetricField]
    rank: int
    gram: Callable[[ArrayLike], ArrayLike]
    conn: Callable[[ArrayLike], ArrayLike]
    name: str = "bundle"
    atiyah: Optional[AtiyahParams] = None

    def __post_init__(self):
        if int(self.rank) != self.rank or self.rank < 1:
            raise InvalidParameterError(f"bundle rank must be a positive integer, got {self.rank}")

    @property
    def base_field(self) -> MetricField:
        if isinstance(self.base, SpaceForm):
            return self.base.metric_field
        return self.base

    @property
    def n(self) -> int:
        return self.base_field.dim

    @property
    def dim(self) -> int:
        return self.n + self.rank

    def check_base_point(self, x) -> np.ndarray:
        return self.base_field.check_point(x)

    def point(self, x, mu) -> "TotalSpacePoint":
        x = self.check_base_point(x)
        mu = np.asarray(mu, dtype=float)
        if mu.shape != (self.rank,):
            raise InvalidParameterError(f"{self.name}: expected {self.rank} fiber coordinates, got shape {mu.shape}")
        G = np.asarray(self.gram(x), dtype=float)
        return TotalSpacePoint(x=x, mu=mu, t=float(mu @ G @ mu))

    def point_from_coordinates(self, y) -> "TotalSpacePoint":
        y = np.asarray(y, dtype=float)
        if y.shape != (self.dim,):
            raise InvalidParameterError(f"{self.name}: expected {self.dim} coordinates, got shape {y.shape}")
        return self.point(y[: self.n], y[self.n :])


@dataclass(frozen=True, eq=False)
class TotalSpacePoint:
    """A point sum_j mu_j e_j(x) of the total space; t = |mu|^2_E."""

    x: np.ndarray
    mu: np.ndarray
    t: float

    @property
    def alpha(self) -> float:
        return 1.0 + self.t

    @property
    def coordinates(self) -> np.ndarray:
        return np.concatenate([self.x, self.mu])


# -- splitting of the tangent space ------------------------------------------


def _conn_at(bundle: EuclideanBundle, x) -> np.ndarray:
    return np.asarray(bundle.conn(np.asarray(x, dtype=float)), dtype=float).reshape(
        bundle.n, bundle.rank, bundle.rank
    )


def connection_map(bundle: EuclideanBundle, pt: TotalSpacePoint, A) -> np.ndarray:
    """
    K(A)_l = Z_l + sum_ij b_i mu_j Gamma^l_ij for A = (b, Z) in total-space
    coordinates.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (bundle.dim,):
        raise InvalidParameterError(f"{bundle.name}: expected a tangent vector of length {bundle.dim}")
    b, Z = A[: bundle.n], A[bundle.n :]
    return Z + np.einsum("i,j,ijl->l", b, pt.mu, _conn_at(bundle, pt.x))


def horizontal_lift(bundle: EuclideanBundle, pt: TotalSpacePoint, u) -> np.ndarray:
    """(u, -sum_ij u_i mu_j Gamma^k_ij) for a base vector u in chart coordinates."""
    u = np.asarray(u, dtype=float)
    correction = np.einsum("i,j,ijk->k", u, pt.mu, _conn_at(bundle, pt.x))
    return np.concatenate([u, -correction])


def vertical_lift(bundle: EuclideanBundle, pt: TotalSpacePoint, alpha) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (bundle.rank,):
        raise InvalidParameterError(f"{bundle.name}: expected a fiber vector of length {bundle.rank}")
    return np.concatenate([np.zeros(bundle.n), alpha])


# -- h_{p,q} -------------------------------------------------------------------


def _fiber_blocks(G, mu, q: float, p: float):
    """Return (w, M) with w = (1 + mu^T G mu)^{-p} and M = G + q (G mu)(G mu)^T."""
    Gmu = contract("ab,b->a", G, mu)
    t = contract("a,a->", mu, Gmu)
    w = (1.0 + t) ** (-p)
    M = G + q * contract("a,b->ab", Gmu, Gmu)
    return w, M


def cg_metric_field(bundle: EuclideanBundle, params: CGParams) -> MetricField:
    """
    h_{p,q}(A, B) = <dpi A, dpi B> + (1+t)^{-p} (<KA, KB>_E + q <KA, mu>_E <KB, mu>_E)
    as a metric field on the n + r total-space coordinates.
    """
    n, r = bundle.n, bundle.rank
    base = bundle.base_field

    def components(y):
        x, mu = y[:n], y[n:]
        G = bundle.gram(x)
        K = contract("ijl,j->li", bundle.conn(x), mu)
        w, M = _fiber_blocks(G, mu, params.q, params.p)
        KtM = contract("li,lm->im", K, M)
        h_xx = base.components(x) + w * contract("im,mj->ij", KtM, K)
        h_xm = w * KtM
        return block([[h_xx, h_xm], [transpose(h_xm), w * M]])

    def domain(y):
        base.check_point(y[:n])

    return MetricField(
        dim=n + r,
        components=components,
        domain=domain,
        name=f"h{params.label} on {bundle.name}",
    )


def fiber_metric_field(bundle: EuclideanBundle, params: CGParams, x) -> MetricField:
    """Restriction of h_{p,q} to the fiber over x, on the r fiber coordinates."""
    x = bundle.check_base_point(x)
    G = np.asarray(bundle.gram(x), dtype=float)

    def components(mu):
        w, M = _fiber_blocks(G, mu, params.q, params.p)
        return w * M

    return MetricField(
        dim=bundle.rank,
        components=components,
        name=f"h{params.label} on fiber of {bundle.name}",
    )


# -- constructors ----------------------------------------------------------------


def build_flat_bundle(base: Union[SpaceForm, MetricField], rank: int) -> EuclideanBundle:
    """Trivial bundle base x R^r with the product connection."""
    n = base.n if isinstance(base, SpaceForm) else base.dim
    zeros = np.zeros((n, rank, rank))
    eye = np.eye(rank)
    base_name = base.name
    return EuclideanBundle(
        base=base,
        rank=rank,
        gram=lambda x: eye,
        conn=lambda x: zeros,
        name=f"{base_name} x R{rank}",
    )


def build_tangent_bundle(sf: SpaceForm) -> EuclideanBundle:
    """TM in the orthonormal frame e_i = lambda^{-1} d_i with its Levi-Civita connection."""
    eye = np.eye(sf.n)
    return EuclideanBundle(
        base=sf,
        rank=sf.n,
        gram=lambda x: eye,
        conn=lambda x: levi_civita_frame_coefficients(sf, x),
        name=f"T{sf.name}",
    )


class _AtiyahConnection:
    """
    Connection coefficients of AO(M, k) over a space form in the frame
    {e_i} u {(2k)^{-1/2} e_a ^ e_b : a < b}.

    Blocks (lambda and phi are jets or arrays):
        TM -> TM : Levi-Civita coefficients
        TM -> so : lambda * tm_so,  the -1/2 R^M(d_i, e_j) = 1/2 c lambda e_i ^ e_j part
        so -> TM : lambda * so_tm,  H_{d_i} F = c k F(lambda e_i)
        so -> so : phi . so_so,     commutator with the Levi-Civita connection forms
    """

    def __init__(self, sf: SpaceForm, k: float):
        n = sf.n
        pairs = so_pairs(n)
        m = len(pairs)
        c = sf.c
        root = np.sqrt(2.0 * k)

        tm_so = np.zeros((n, n, m))
        so_tm = np.zeros((n, m, n))
        for P, (a, b) in enumerate(pairs):
            tm_so[a, b, P] = 0.5 * c * root
            tm_so[b, a, P] = -0.5 * c * root
            # F(e_i) for F = (2k)^{-1/2} e_a ^ e_b
            so_tm[b, P, a] = c * k / root
            so_tm[a, P, b] = -c * k / root

        # so_so[s, i, P, Q]: coefficient of E_Q in [omega_i, E_P] for phi = unit vector s
        basis = [so_matrix(np.eye(m)[P], n, k) for P in range(m)]
        so_so = np.zeros((n, n, m, m))
        eye = np.eye(n)
        for s in range(n):
            gamma = np.einsum("j,il->ijl", eye[s], eye) - np.einsum("l,ij->ijl", eye[s], eye)
            for i in range(n):
                omega = SkewEndomorphism(gamma[i].T)  # omega[l, j] = gamma[i, j, l]
                for P, E in enumerate(basis):
                    so_so[s, i, P] = so_coordinates(omega.commutator(E), k)

        self.sf = sf
        self.tm_so = tm_so
        self.so_tm = so_tm
        self.so_so = so_so

    def __call__(self, x: ArrayLike) -> ArrayLike:
        lam = conformal_factor(self.sf, x)
        phi = log_gradient(self.sf, x)
        tt = levi_civita_frame_coefficients(self.sf, x)
        ts = lam * self.tm_so
        st = lam * self.so_tm
        ss = contract("s,sipq->ipq", phi, self.so_so)
        top = concatenate([tt, ts], axis=2)
        bottom = concatenate([st, ss], axis=2)
        return concatenate([top, bottom], axis=1)


def build_atiyah_bundle(sf: SpaceForm, params: AtiyahParams) -> EuclideanBundle:
    """
    AO(M, k) = TM + so(TM) over a space form with the connection
    nabla_X Y = nabla^M_X Y - 1/2 R^M(X, Y), nabla_X F = nabla^M_X F + c k F(X).
    """
    rank = AtiyahParams.rank(sf.n)
    eye = np.eye(rank)
    return EuclideanBundle(
        base=sf,
        rank=rank,
        gram=lambda x: eye,
        conn=_AtiyahConnection(sf, params.k),
        name=f"AO({sf.name},{params.k:g})",
        atiyah=params,
    )


def atiyah_fiber_split(bundle: EuclideanBundle, mu) -> Tuple[np.ndarray, SkewEndomorphism]:
    """Split Atiyah fiber coordinates into the TM part Z and the so(TM) part F."""
    if bundle.atiyah is None:
        raise InvalidParameterError(f"{bundle.name} is not an Atiyah bundle")
    n = bundle.n
    mu = np.asarray(mu, dtype=float)
    return mu[:n].copy(), so_matrix(mu[n:], n, bundle.atiyah.k)


def atiyah_fiber_coordinates(bundle: EuclideanBundle, Z, F: SkewEndomorphism) -> np.ndarray:
    if bundle.atiyah is None:
        raise InvalidParameterError(f"{bundle.name} is not an Atiyah bundle")
    return np.concatenate([np.asarray(Z, dtype=float), so_coordinates(F, bundle.atiyah.k)])


# -- curvature of the bundle connection ------------------------------------------


def bundle_compatibility_residual(bundle: EuclideanBundle, x) -> float:
    """max |d_i G_jl - sum_m (Gamma^m_ij G_ml + Gamma^m_il G_jm)|."""
    x = bundle.check_base_point(x)
    G = bundle.gram(Jet.variables(x))
    if not isinstance(G, Jet):
        G = Jet.constant(G, bundle.n)
    gamma = _conn_at(bundle, x)
    dG = np.einsum("jli->ijl", G.d1)
    predicted = np.einsum("ijm,ml->ijl", gamma, G.val) + np.einsum("ilm,jm->ijl", gamma, G.val)
    return float(np.max(np.abs(dG - predicted)))


def connection_curvature(
    bundle: EuclideanBundle, x, convention: Convention = Convention.NEGATED
) -> np.ndarray:
    """
    Curvature of the bundle connection on coordinate directions.

    Returns R[i, j] as r x r matrices: R[i, j] @ a are the fiber components of
    R(d_i, d_j) a. In the textbook convention
        R[i, j, b, a] = d_i Gamma^b_ja - d_j Gamma^b_ia
                        + sum_c (Gamma^c_ja Gamma^b_ic - Gamma^c_ia Gamma^b_jc)
    and the negated convention is its negative.
    """
    x = bundle.check_base_point(x)
    conn = bundle.conn(Jet.variables(x))
    if not isinstance(conn, Jet):
        conn = Jet.constant(conn, bundle.n)
    g, d = conn.val, conn.d1  # d[i, a, b, m] = d_m Gamma^b_ia
    R = (
        np.einsum("jabi->ijba", d)
        - np.einsum("iabj->ijba", d)
        + np.einsum("jac,icb->ijba", g, g)
        - np.einsum("iac,jcb->ijba", g, g)
    )
    if Convention(convention) is Convention.NEGATED:
        R = -R
    return R


def base_orthonormal_frame(bundle: EuclideanBundle, x) -> np.ndarray:
    """Rows form an orthonormal frame of the base metric at x, in chart coordinates."""
    if isinstance(bundle.base, SpaceForm):
        return orthonormal_frame(bundle.base, x)
    g = bundle.base_field.evaluate(x)
    L = np.linalg.cholesky(g)
    return np.linalg.solve(L, np.eye(len(g)))


def frame_connection_curvature(
    bundle: EuclideanBundle, x, convention: Convention = Convention.NEGATED
) -> np.ndarray:
    """R(X_a, X_b) over an orthonormal base frame, as r x r matrices."""
    R = connection_curvature(bundle, x, convention)
    frame = base_orthonormal_frame(bundle, x)
    return np.einsum("ai,bj,ijpq->abpq", frame, frame, R)


def oneill_B(bundle: EuclideanBundle, pt: TotalSpacePoint, u, v) -> np.ndarray:
    """
    Fiber components of B_u v = 1/2 (R(u, v) mu)^v, negated convention,
    for base vectors u, v in chart coordinates.
    """
    R = connection_curvature(bundle, pt.x, Convention.NEGATED)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return 0.5 * np.einsum("i,j,ijba,a->b", u, v, R, pt.mu)


def oneill_norm_squared(bundle: EuclideanBundle, params: CGParams, pt: TotalSpacePoint) -> float:
    """sum_{i, j != i} h_{p,q}(B_{X_i} X_j, B_{X_i} X_j) over an orthonormal base frame."""
    frame = base_orthonormal_frame(bundle, pt.x)
    G = np.asarray(bundle.gram(pt.x), dtype=float)
    w, M = _fiber_blocks(G, pt.mu, params.q, params.p)
    total = 0.0
    for i in range(bundle.n):
        for j in range(bundle.n):
            if i == j:
                continue
            B = oneill_B(bundle, pt, frame[i], frame[j])
            total += float(w * (B @ M @ B))
    return total


def xi_form(bundle: EuclideanBundle, x, a, b) -> float:
    """
    xi(a, b) = sum over ordered pairs i != j of
    <R(X_i, X_j) a, R(X_i, X_j) b>_E, X an orthonormal base frame.
    """
    R = frame_connection_curvature(bundle, x, Convention.NEGATED)
    G = np.asarray(bundle.gram(np.asarray(x, dtype=float)), dtype=float)
    Ra = np.einsum("ijpq,q->ijp", R, np.asarray(a, dtype=float))
    Rb = np.einsum("ijpq,q->ijp", R, np.asarray(b, dtype=float))
    # diagonal terms R(X_i, X_i) vanish
    return float(np.einsum("ijp,pq,ijq->", Ra, G, Rb))


def principal_curvature_atiyah(
    sf: SpaceForm, params: AtiyahParams, u, v, Z, F: SkewEndomorphism
) -> Tuple[np.ndarray, SkewEndomorphism]:
    """
    R^{nabla A}(u, v)(Z + F) on a space form, frame-expressed inputs:
    -2 varpi (u ^ v)(Z) and -2 varpi [u ^ v, F], varpi = c(2 - ck)/4.
    """
    varpi = 0.25 * sf.c * (2.0 - sf.c * params.k)
    W = wedge(u, v)
    return -2.0 * varpi * W.apply(Z), W.commutator(F) * (-2.0 * varpi)


def atiyah_h_tensor(bundle: EuclideanBundle, x) -> np.ndarray:
    """
    so(TM)-coordinates of H_{X_a} X_b over the orthonormal base frame, read
    from the TM -> so(TM) block of the connection. Shape (n, n, n(n-1)/2).
    """
    if bundle.atiyah is None:
        raise InvalidParameterError(f"{bundle.name} is not an Atiyah bundle")
    n = bundle.n
    gamma = _conn_at(bundle, x)
    frame = base_orthonormal_frame(bundle, x)
    return np.einsum("ai,ibP->abP", frame, gamma[:, :n, n:])


# -- sampling ----------------------------------------------------------------------


def random_total_points(
    bundle: EuclideanBundle, count: int, seed: int = 0, fiber_scale: float = 1.0
) -> List[TotalSpacePoint]:
    """Seeded total-space sample: base points from the chart ball, Gaussian fiber coordinates."""
    rng = np.random.default_rng(seed)
    if isinstance(bundle.base, SpaceForm):
        xs = random_points(bundle.base, count, seed=int(rng.integers(2**31)))
    else:
        xs = 0.5 * rng.standard_normal((count, bundle.n))
    mus = fiber_scale * rng.standard_normal((count, bundle.rank))
    return [bundle.point(x, mu) for x, mu in zip(xs, mus)]
