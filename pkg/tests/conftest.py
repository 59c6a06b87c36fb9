import math

import pytest

from toricjets import EmbeddingDimensionError, ToricSurface


def coprime_family(qmax):
    """Every surface with 0 < p < q <= qmax, gcd 1, embedding dimension > 3."""
    out = []
    for q in range(2, qmax + 1):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            try:
                out.append(ToricSurface.from_pair(p, q))
            except EmbeddingDimensionError:
                # p=1 is the hypersurface case x1*x3 = x2^q, e=3
                continue
    return out


@pytest.fixture(scope="session")
def family30():
    return coprime_family(30)


@pytest.fixture(scope="session")
def family12():
    return coprime_family(12)
