import pytest

from utils.errors import InvalidPermutation
from utils.permutation_parser import PermutationParser


@pytest.mark.parametrize('text', ['3 2 5 1 4', '(3 2 5 1 4)', '3,2,5,1,4', ' ( 3, 2 5 1 4 ) ', '(32514)'])
def test_accepted_forms(text):
    assert PermutationParser.parse_line(text) == (3, 2, 5, 1, 4)


def test_multi_digit_entries_need_separators():
    assert PermutationParser.parse_line('11 7 6 10 9 5 8 2 1 13 4 14 3 12')[0] == 11


@pytest.mark.parametrize('text', ['', '()', '3 two 1', '1.5 2'])
def test_rejected_forms(text):
    with pytest.raises(InvalidPermutation):
        PermutationParser.parse_line(text)


def test_parse_lines_skips_blanks_and_comments():
    content = '# res_3\n2 1 3\n\n(1 3 2)\n'
    assert PermutationParser.parse_lines(content) == [(2, 1, 3), (1, 3, 2)]
