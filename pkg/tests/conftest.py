import math

import numpy as np
import pytest

from qstirling import PhysicalParams


# Independent reference routes.  Nothing here calls into qstirling.statmech.

def geometric_oscillator(omega, T):
    """lnZ and U of the textbook oscillator (hbar = k_B = 1)."""
    x = omega / T
    return -x / 2 - math.log1p(-math.exp(-x)), omega / 2 + omega / math.expm1(x)


def stirling_from_states(A, B, C, D, T_hot, T_cold):
    """Efficiency from (lnZ, U) pairs of the four corners."""
    q_ab = B[1] - A[1] + T_hot * (B[0] - A[0])
    q_bc = C[1] - B[1]
    q_cd = D[1] - C[1] + T_cold * (D[0] - C[0])
    q_da = A[1] - D[1]
    return (q_ab + q_bc + q_cd + q_da) / (q_da + q_ab)


def geometric_oscillator_eta(w, wp, T_hot, T_cold):
    return stirling_from_states(geometric_oscillator(w, T_hot),
                                geometric_oscillator(wp, T_hot),
                                geometric_oscillator(wp, T_cold),
                                geometric_oscillator(w, T_cold), T_hot, T_cold)


def brute_well_state(e1, T, double, kB=1.0, n_terms=10**6):
    """Plain 10^6-term sum for the textbook well with ground level e1."""
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    if double:
        e = e1 * (2 * n) ** 2
        deg = 2.0
    else:
        e = e1 * n**2
        deg = 1.0
    beta = 1.0 / (kB * T)
    w = deg * np.exp(-beta * e)
    Z = w.sum()
    return math.log(Z), float((w * e).sum() / Z)


def brute_well_eta(e1, T_hot, T_cold, kB=1.0):
    A = brute_well_state(e1, T_hot, False, kB)
    B = brute_well_state(e1, T_hot, True, kB)
    C = brute_well_state(e1, T_cold, True, kB)
    D = brute_well_state(e1, T_cold, False, kB)
    q_ab = B[1] - A[1] + kB * T_hot * (B[0] - A[0])
    q_bc = C[1] - B[1]
    q_cd = D[1] - C[1] + kB * T_cold * (D[0] - C[0])
    q_da = A[1] - D[1]
    return (q_ab + q_bc + q_cd + q_da) / (q_da + q_ab)


@pytest.fixture
def unit_natural():
    """hbar = c = k_B = m = 1."""
    return PhysicalParams.natural(m=1.0)


@pytest.fixture
def electron_si():
    return PhysicalParams.si()
