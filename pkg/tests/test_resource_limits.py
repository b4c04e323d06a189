import pytest

from backend.errors import InvalidInputError, ResourceLimitError
from backend.resource_limits import (
    DEFAULT_MAX_ARRAY_U,
    DEFAULT_MAX_U,
    DEFAULT_WARN_U,
    ENUMERATION_MAX_U,
    ORACLE_MAX_U,
    LimitType,
    ResourceLimits,
)

ENV_NAMES = ("TRIE_MEASURE_MAX_U", "TRIE_MEASURE_WARN_U", "TRIE_MEASURE_MAX_ARRAY_U", "TRIE_MEASURE_LOG_LEVEL")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    limits = ResourceLimits()
    assert limits.max_universe == DEFAULT_MAX_U == 4096
    assert limits.warn_universe == DEFAULT_WARN_U == 1024
    assert limits.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("TRIE_MEASURE_MAX_U", "64")
    monkeypatch.setenv("TRIE_MEASURE_WARN_U", "16")
    monkeypatch.setenv("TRIE_MEASURE_LOG_LEVEL", "debug")
    limits = ResourceLimits()
    assert (limits.max_universe, limits.warn_universe, limits.log_level) == (64, 16, "DEBUG")


def test_blank_variable_falls_back_to_default(monkeypatch):
    monkeypatch.setenv("TRIE_MEASURE_MAX_U", " ")
    assert ResourceLimits().max_universe == DEFAULT_MAX_U


@pytest.mark.parametrize("raw", ["many", "0", "-5", "1.5"])
def test_invalid_caps_are_rejected(monkeypatch, raw):
    monkeypatch.setenv("TRIE_MEASURE_MAX_U", raw)
    with pytest.raises(InvalidInputError):
        ResourceLimits()


@pytest.mark.parametrize("universe_size, limit_type, valid", [
    (10, LimitType.NONE, True),
    (1024, LimitType.NONE, True),
    (1025, LimitType.WARNING, True),
    (4096, LimitType.WARNING, True),
    (4097, LimitType.ORDERED_CAP, False),
])
def test_check_ordered(universe_size, limit_type, valid):
    result = ResourceLimits().check_ordered(universe_size)
    assert result.limit_type is limit_type
    assert result.valid is valid
    assert result.requested == universe_size


def test_refused_check_raises_with_details():
    result = ResourceLimits().check_ordered(5000)
    with pytest.raises(ResourceLimitError) as excinfo:
        result.raise_if_invalid()
    assert (excinfo.value.limit, excinfo.value.requested) == (4096, 5000)
    assert "5000" in str(excinfo.value)


def test_valid_check_does_not_raise():
    ResourceLimits().check_ordered(2000).raise_if_invalid()


@pytest.mark.parametrize("universe_size, cap, hard_limit, valid, limit", [
    (256, None, ORACLE_MAX_U, True, 256),
    (257, None, ORACLE_MAX_U, False, 256),
    (64, 32, ORACLE_MAX_U, False, 32),
    (300, 1000, ORACLE_MAX_U, False, 256),
    (10, None, ENUMERATION_MAX_U, True, 10),
    (11, 50, ENUMERATION_MAX_U, False, 10),
])
def test_check_oracle(universe_size, cap, hard_limit, valid, limit):
    result = ResourceLimits.check_oracle(universe_size, cap, hard_limit=hard_limit)
    assert result.valid is valid
    assert result.limit == limit
    assert result.limit_type is (LimitType.NONE if valid else LimitType.ORACLE_CAP)


def test_array_cap_default_and_override(monkeypatch):
    assert ResourceLimits().max_array_universe == DEFAULT_MAX_ARRAY_U == 1 << 24
    monkeypatch.setenv("TRIE_MEASURE_MAX_ARRAY_U", "1024")
    assert ResourceLimits().max_array_universe == 1024
