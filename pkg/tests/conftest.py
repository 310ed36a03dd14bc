import pytest

from k3enriques.checker import gamma2_in_k3


@pytest.fixture(scope="session")
def gamma2_report():
    # the glue-group enumeration takes a few seconds; share one run
    return gamma2_in_k3()
