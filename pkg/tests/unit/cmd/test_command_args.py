from __future__ import annotations
import pytest
from app.cmd.command_args import int_arg, split_top_level, take_options, tokenize
from app.shared.errors import CommandError


def test_tokenize_keeps_quoted_expressions_whole() -> None:
    assert tokenize('eq "c{0}(a(0))" "1"') == ["eq", "c{0}(a(0))", "1"]

def test_tokenize_rejects_unterminated_quotes() -> None:
    with pytest.raises(CommandError):
        tokenize('eq "a(0)')

def test_split_top_level_ignores_nested_commas() -> None:
    assert split_top_level("a(0), c{0,1}(d(0,1)), s[0,2](x)") == ["a(0)", "c{0,1}(d(0,1))", "s[0,2](x)"]

@pytest.mark.parametrize("text", ["a(0),,a(1)", "a(0", "a(0))", ""])
def test_split_top_level_rejects_malformed_lists(text: str) -> None:
    with pytest.raises(CommandError):
        split_top_level(text)

def test_take_options_separates_flags() -> None:
    # when
    positional, options = take_options(["a(0)", "--window", "4", "d(0,1)"], {"window": True})

    # then
    assert positional == ["a(0)", "d(0,1)"]
    assert options == {"window": "4"}

def test_take_options_rejects_unknown_and_missing_values() -> None:
    with pytest.raises(CommandError, match="unknown option"):
        take_options(["--depth", "2"], {"window": True})
    with pytest.raises(CommandError, match="needs a value"):
        take_options(["--window"], {"window": True})

def test_int_arg() -> None:
    assert int_arg("3", "depth") == 3
    with pytest.raises(CommandError, match="integer"):
        int_arg("three", "depth")
    with pytest.raises(CommandError, match=">= 1"):
        int_arg("0", "window", minimum=1)
