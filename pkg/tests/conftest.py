import numpy as np
import pytest

from hhmeasure import FourierSymbol


def random_symbol(rng, band, unit_coeffs=True, real=False):
    """Random finite-band symbol; coefficients inside the unit disk."""
    coeffs = {}
    for k in range(-band, band + 1):
        if k == 0 and not real:
            continue
        c = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        if unit_coeffs:
            c /= np.sqrt(2)
        coeffs[k] = c
    if real:
        sym = {}
        for k in range(1, band + 1):
            sym[k] = coeffs.get(k, 0)
            sym[-k] = np.conj(coeffs.get(k, 0))
        sym[0] = complex(coeffs.get(0, 0)).real
        return FourierSymbol(sym, real_valued=True)
    return FourierSymbol(coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
