"""
Permutation Parser - read one-line notation from the command line or files
"""
import logging
import re
from typing import List, Tuple

from utils.errors import InvalidPermutation

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r'[\s,]+')


class PermutationParser:
    """Parse permutations written in one-line notation"""

    @staticmethod
    def parse_line(text: str) -> Tuple[int, ...]:
        """
        Parse a single permutation.

        Accepted forms:
            3 2 5 1 4
            (3 2 5 1 4)
            3,2,5,1,4
            (2314)        compact form, only when every entry is one digit

        Args:
            text: the permutation as written

        Returns:
            Tuple of entries (validity as a bijection is checked by the caller)
        """
        stripped = text.strip().strip('()').strip()
        if not stripped:
            raise InvalidPermutation("empty permutation")

        tokens = [tok for tok in _SEPARATORS.split(stripped) if tok]
        if len(tokens) == 1 and len(tokens[0]) > 1 and tokens[0].isdigit():
            # compact notation such as (2314)
            tokens = list(tokens[0])

        try:
            entries = tuple(int(tok) for tok in tokens)
        except ValueError:
            logger.warning(f"Rejected permutation text: {text!r}")
            raise InvalidPermutation(f"not a list of integers: {text!r}")
        return entries

    @staticmethod
    def parse_lines(content: str) -> List[Tuple[int, ...]]:
        """
        Parse one permutation per non-blank line; lines starting with '#' are skipped.
        """
        result = []
        for line in content.splitlines():
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            result.append(PermutationParser.parse_line(line))
        logger.debug(f"Parsed {len(result)} permutations")
        return result
