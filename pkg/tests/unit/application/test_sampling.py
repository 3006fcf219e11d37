from __future__ import annotations
from app.application.sampling import Sampler
from app.domain.terms import render


def test_same_seed_gives_the_same_instances() -> None:
    first = Sampler.seeded(7, window=4, height=3)
    second = Sampler.seeded(7, window=4, height=3)

    assert [first.element().text for _ in range(20)] == [second.element().text for _ in range(20)]
    assert [render(first.term(3, ["x"])) for _ in range(20)] == [render(second.term(3, ["x"])) for _ in range(20)]

def test_instances_respect_window_and_height() -> None:
    sampler = Sampler.seeded(3, window=4, height=3)

    for _ in range(50):
        x = sampler.element()
        assert all(i < 4 for i in x.support)
        q = sampler.rational()
        assert abs(q.numerator) <= 3 and q.denominator <= 3
        i, j = sampler.transposition()
        assert i < j < 4

def test_nonzero_element_is_nonzero() -> None:
    sampler = Sampler.seeded(11, window=3, height=2)

    assert not sampler.nonzero_element().is_zero
