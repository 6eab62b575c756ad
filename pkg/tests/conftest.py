import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "det",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")


@pytest.fixture(scope="session")
def z12():
    from modframe import regular_module, zmod

    return regular_module(zmod(12))


@pytest.fixture(scope="session")
def z4():
    from modframe import regular_module, zmod

    return regular_module(zmod(4))


@pytest.fixture(scope="session")
def m2f2():
    from modframe import matrix_ring, regular_module

    return regular_module(matrix_ring(2, 2))


@pytest.fixture(scope="session")
def f2sq():
    from modframe import cyclic_product_module

    return cyclic_product_module(2, [2, 2])


@pytest.fixture(scope="session")
def z2z4():
    from modframe import cyclic_product_module

    return cyclic_product_module(8, [2, 4])


@pytest.fixture(scope="session")
def z2xz2():
    from modframe import regular_module, ring_product, zmod

    return regular_module(ring_product([zmod(2), zmod(2)]))
