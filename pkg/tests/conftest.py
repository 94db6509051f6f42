import pytest

from quasihopf import builtin

_CACHE = {}


def get_algebra(name):
    if name not in _CACHE:
        _CACHE[name] = builtin(name)
    return _CACHE[name]


@pytest.fixture(scope="session")
def z2():
    return get_algebra("group_z2")


@pytest.fixture(scope="session")
def dr():
    return get_algebra("drinfeld_h2")


@pytest.fixture(scope="session")
def sw():
    return get_algebra("sweedler_h4")


@pytest.fixture(scope="session", params=["group_z2", "drinfeld_h2", "sweedler_h4"])
def any_h(request):
    return get_algebra(request.param)
