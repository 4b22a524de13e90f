"""
Check every entry of data/links.json: it must parse, and its invariants are printed for review.
Run from the repository root: python scripts/check_golden_links.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.catalog import golden_link, load_golden_links  # noqa: E402
from core.errors import CongruenceKitError  # noqa: E402
from core.goeritz import determinant  # noqa: E402
from core.links import linking_matrix  # noqa: E402
from core.milnor import milnor_triple  # noqa: E402


def describe(name):
    L = golden_link(name)
    line = f"{name}: {L.n_components} component(s), {L.n_crossings} crossing(s), det={determinant(L)}"
    matrix = linking_matrix(L)
    if L.n_components > 1:
        line += f", linking={matrix}"
    if L.n_components == 3 and not any(x for row in matrix for x in row):
        line += f", mu123={milnor_triple(L)}"
    return line


def main():
    invalid = []
    for name in load_golden_links():
        try:
            print(describe(name))
        except CongruenceKitError as e:
            invalid.append((name, e))

    if invalid:
        print("Invalid golden links found:")
        for name, e in invalid:
            print(f"{name}: {e}")
        return 1
    print("All golden links are valid.")
    return 0


if __name__ == '__main__':
    sys.exit(main())
