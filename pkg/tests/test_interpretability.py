import pytest

from src.core.errors import BudgetExceededError, UniverseError
from src.core.interpretability import (
    check_embed, coded_level, decode_kuratowski, hat_embed, hat_preimage, hcl_filter, hcl_level,
    hf_level, hf_render, interpretability_suite, is_code, is_hat_image, is_hereditarily_classical,
    kuratowski, verify_check_iso, verify_hat_iso, verify_hclw_equals_vcheck,
    verify_w_relativized_to_hcl,
)
from src.core.truth import BOTH
from src.core.universe import (
    classical_singleton, empty, enumerate_level, omega_member, tower,
)


@pytest.mark.parametrize("n,size", [(0, 0), (1, 1), (2, 2), (3, 4), (4, 16)])
def test_hf_level_sizes(n, size):
    assert len(hf_level(n)) == size


def test_hf_level_budget():
    with pytest.raises(BudgetExceededError):
        hf_level(5)


def test_check_embedding():
    (zero,) = hf_level(1)
    assert hf_render(zero) == "{}"
    assert check_embed(zero) is empty()
    one = frozenset({zero})
    assert check_embed(one) is classical_singleton(empty())
    assert check_embed(frozenset({one})) is tower(2)


def test_check_iso_up_to_rank_four():
    report = verify_check_iso(4)
    assert report.passed, report.failures
    assert report.extra["pairs_checked"] == 256


@pytest.mark.parametrize("n,size", [(1, 1), (2, 2), (3, 4)])
def test_hcl_level_sizes(n, size):
    assert len(hcl_level(n)) == size


def test_hereditarily_classical():
    assert is_hereditarily_classical(tower(3))
    assert not is_hereditarily_classical(omega_member(BOTH))
    assert not is_hereditarily_classical(classical_singleton(omega_member(BOTH)))
    assert len(hcl_filter(enumerate_level(2))) == 2


def test_hcl_filter_needs_closed_fragment():
    with pytest.raises(UniverseError):
        hcl_filter([tower(2)])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hclw_equals_vcheck(n):
    report = verify_hclw_equals_vcheck(n)
    assert report.passed, report.failures


def test_kuratowski_decoding():
    e, one = empty(), classical_singleton(empty())
    assert decode_kuratowski(kuratowski(e, one)) == (e, one)
    assert decode_kuratowski(kuratowski(one, one)) == (one, one)
    assert decode_kuratowski(e) is None
    with pytest.raises(UniverseError):
        kuratowski(omega_member(BOTH), e)


def test_hat_embedding_round_trip(w2):
    for x in w2:
        p = hat_embed(x)
        assert is_hereditarily_classical(p)
        assert hat_preimage(p) is x
    assert not is_hat_image(empty())


def test_hat_iso():
    report = verify_hat_iso(2)
    assert report.passed, report.failures
    assert report.extra["pairs_checked"] == 16


def test_relativized_universe():
    report = verify_w_relativized_to_hcl(2)
    assert report.passed, report.failures
    assert len(coded_level(2)) == 4
    sizes = report.extra["sizes"]
    assert sizes["coded"] == sizes["images"] == 4
    assert sizes["candidates"] > 4


def test_codes_are_selected_from_hereditarily_classical_sets():
    e = empty()
    assert coded_level(1) == [kuratowski(e, e)]
    level_one = frozenset(coded_level(1))
    assert is_code(kuratowski(e, classical_singleton(kuratowski(e, e))), level_one)
    # {0} is hereditarily classical but 0 is not a code
    assert not is_code(kuratowski(classical_singleton(e), e), level_one)
    assert not is_code(classical_singleton(e), level_one)
    assert all(is_hereditarily_classical(p) for p in coded_level(2))


def test_coded_level_budget():
    with pytest.raises(BudgetExceededError):
        coded_level(4)


def test_suite():
    suite = interpretability_suite(max_hf_rank=3, hcl_level_bound=2, hat_level=1)
    assert suite.passed
    assert [c.check for c in suite.checks] == [
        "check_iso", "hclw_equals_vcheck", "hclw_equals_vcheck", "hat_iso", "w_relativized_to_hcl",
    ]
