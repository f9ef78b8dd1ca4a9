import numpy as np
import pytest

from thermolen import LinearCoeffs, ModelConfig, Reference

REDUCED_R = 8.0 / 3.0


@pytest.fixture(scope="session")
def ideal():
    return ModelConfig(family="ideal", R=1.0, c_v=1.5)


@pytest.fixture(scope="session")
def quasi():
    return ModelConfig(family="quasi_ideal", R=1.0, c_v=1.5, b=0.1)


@pytest.fixture(scope="session")
def vdw():
    """Van der Waals in reduced units: T_c = v_c = p_c = 1."""
    return ModelConfig(family="van_der_waals", R=REDUCED_R, c_v=1.5,
                       a=3.0, b=1.0 / 3.0)


@pytest.fixture(scope="session")
def gas_models(ideal, quasi, vdw):
    return {"ideal": ideal, "quasi_ideal": quasi, "van_der_waals": vdw}


@pytest.fixture(scope="session")
def linear_sv_bilinear():
    """u = s*v: both metric determinants are -1, v is the isotropic direction."""
    return ModelConfig(family="linear_sv", R=1.0,
                       linear_coeffs=LinearCoeffs(a_poly=(0.0, 1.0)))


@pytest.fixture(scope="session")
def linear_sv_curved():
    """u = (0.5 + 0.2 s**2) v + (1 + s + 0.3 s**2); T > 0 for s, v > 0."""
    return ModelConfig(family="linear_sv", R=1.0,
                       linear_coeffs=LinearCoeffs(a_poly=(0.5, 0.0, 0.2),
                                                  b_poly=(1.0, 1.0, 0.3)))


@pytest.fixture(scope="session")
def linear_uv():
    """s = (0.1 - 0.02 u**2) v + 0.5 u on u, v in (0.5, 2): s_u > 0, s_uu < 0."""
    return ModelConfig(family="linear_uv", R=1.0,
                       linear_coeffs=LinearCoeffs(a_poly=(0.1, 0.0, -0.02),
                                                  b_poly=(0.0, 0.5)))


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
