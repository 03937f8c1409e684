import pytest

from ringclass import verify


@pytest.fixture(scope="session")
def negative_fields():
    return verify.fields(verify.NEGATIVE_BOUND, -1)


@pytest.fixture(scope="session")
def positive_fields():
    return verify.fields(verify.POSITIVE_BOUND, 1)
