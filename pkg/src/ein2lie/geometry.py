"""Connection, curvature and Ricci data of a left-invariant Lorentzian metric.

Everything is frame algebra: the metric is constant on the frame, so the
Levi-Civita connection comes from the Koszul formula specialized to
structure constants, and curvature needs no derivative terms.

Index conventions, fixed once for the whole package:

  Gamma[i][j][k]   : e_k coefficient of nabla_{e_i} e_j
  R[i][j][k][l]    : e_l coefficient of R(e_i, e_j) e_k, with
                     R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
                               - nabla_{[X, Y]} Z
  rho[i][j]        : Ricci tensor rho(e_i, e_j), computed as
                     -g(R(e_i,e_1)e_j, e_1) - g(R(e_i,e_2)e_j, e_2)
                     + g(R(e_i,e_3)e_j, e_3)
  rho_op[i][j]     : Ricci operator in the row ("transport") convention,
                     rho0(e_i) = sum_j rho_op[i][j] e_j
  rho_sq[i][j]     : g(rho0 e_i, rho0 e_j)

The Ricci sign convention above is taken verbatim from the tabulated
classification data this package verifies; it is anchored to those
tables, not to any textbook convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .liealg import EPS, StructureConstants, require_lie_algebra
from .scalars import Mode, Scalar

Matrix = Tuple[Tuple[Scalar, ...], ...]

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ConnectionCoefficients:
    """gamma[i][j][k] is the e_k coefficient of nabla_{e_i} e_j.

    Torsion-freeness (gamma[i][j][k] - gamma[j][i][k] = c[i][j][k]) and
    metric compatibility (eps_k gamma[i][j][k] + eps_j gamma[i][k][j] = 0)
    hold by construction.
    """

    gamma: Tuple[Tuple[Tuple[Scalar, ...], ...], ...]

    def entry(self, i: int, j: int, k: int) -> Scalar:
        return self.gamma[i][j][k]

    def derivative(self, i: int, j: int) -> Tuple[Scalar, ...]:
        """The coefficient triple of nabla_{e_i} e_j."""
        return self.gamma[i][j]


@dataclass(frozen=True)
class CurvatureTensor:
    """r[i][j][k][l] is the e_l coefficient of R(e_i, e_j) e_k."""

    r: Tuple

    def entry(self, i: int, j: int, k: int, l: int) -> Scalar:
        return self.r[i][j][k][l]


@dataclass(frozen=True)
class RicciData:
    """Ricci tensor, Ricci operator (row convention) and the rho^2 tensor.

    rho is symmetric; rho_op satisfies rho[i][j] = eps_j * rho_op[i][j]
    and is g-self-adjoint (eps_j rho_op[i][j] = eps_i rho_op[j][i]); in
    Lorentzian signature it need not be diagonalizable.
    """

    rho: Matrix
    rho_op: Matrix
    rho_sq: Matrix


def levi_civita(sc: StructureConstants, mode: Optional[Mode] = None) -> ConnectionCoefficients:
    """Unique torsion-free metric connection, via the Koszul formula.

    With a constant frame metric the formula collapses to

      Gamma^k_ij = (c^k_ij - eps_i eps_k c^i_jk + eps_j eps_k c^j_ki) / 2.

    Raises NotLieAlgebra when the Jacobi residual is nonzero.
    """
    require_lie_algebra(sc, mode)
    c = sc.c
    gamma = tuple(
        tuple(
            tuple(
                (
                    c[i][j][k]
                    - EPS[i] * EPS[k] * c[j][k][i]
                    + EPS[j] * EPS[k] * c[k][i][j]
                )
                * _HALF
                for k in range(3)
            )
            for j in range(3)
        )
        for i in range(3)
    )
    return ConnectionCoefficients(gamma)


def curvature(sc: StructureConstants, conn: ConnectionCoefficients) -> CurvatureTensor:
    """Curvature tensor from structure constants and connection coefficients.

    Frame fields have constant connection coefficients, so

      R^l_ijk = sum_m (Gamma^m_jk Gamma^l_im - Gamma^m_ik Gamma^l_jm)
                - sum_m c^m_ij Gamma^l_mk.
    """
    c = sc.c
    g = conn.gamma
    zero = Fraction(0)
    r = []
    for i in range(3):
        gi = g[i]
        plane_i = []
        for j in range(3):
            gj = g[j]
            cij = c[i][j]
            plane_j = []
            for k in range(3):
                acc = [zero, zero, zero]
                gjk = gj[k]
                gik = gi[k]
                for m in range(3):
                    # skip zero factors: the tables are sparse and exact
                    # rational multiplies dominate the cost
                    a = gjk[m]
                    if a:
                        gim = gi[m]
                        for l in range(3):
                            if gim[l]:
                                acc[l] = acc[l] + a * gim[l]
                    b = gik[m]
                    if b:
                        gjm = gj[m]
                        for l in range(3):
                            if gjm[l]:
                                acc[l] = acc[l] - b * gjm[l]
                    d = cij[m]
                    if d:
                        gmk = g[m][k]
                        for l in range(3):
                            if gmk[l]:
                                acc[l] = acc[l] - d * gmk[l]
                plane_j.append(tuple(acc))
            plane_i.append(tuple(plane_j))
        r.append(tuple(plane_i))
    return CurvatureTensor(tuple(r))


def ricci(sc: StructureConstants, mode: Optional[Mode] = None) -> RicciData:
    """Ricci tensor, operator and rho^2 via the signed frame trace.

    rho(e_i, e_j) = -sum_a R^a_{i a j}  (the eps weights of the trace and
    of the frame inner product cancel), rho_op[i][j] = eps_j rho[i][j],
    rho_sq[i][j] = sum_k eps_k rho_op[i][k] rho_op[j][k].
    """
    conn = levi_civita(sc, mode)
    riem = curvature(sc, conn).r
    rho = tuple(
        tuple(-sum(riem[i][a][j][a] for a in range(3)) for j in range(3)) for i in range(3)
    )
    rho_op = tuple(tuple(EPS[j] * rho[i][j] for j in range(3)) for i in range(3))
    rho_sq = tuple(
        tuple(
            sum(EPS[k] * rho_op[i][k] * rho_op[j][k] for k in range(3))
            for j in range(3)
        )
        for i in range(3)
    )
    return RicciData(rho=rho, rho_op=rho_op, rho_sq=rho_sq)
