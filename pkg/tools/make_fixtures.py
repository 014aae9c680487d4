"""Write the small table fixtures and the stem-extension fixtures.

Tables: klein, d8, q8, d16.  Extensions: D8 and Q8 over the Klein group,
D16 over D8, each as {"total", "base", "projection"} with the projection
pointing into the shipped base table.

    python3 tools/make_fixtures.py
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import numpy as np

from deepcom.extensions import central_quotient_extension, load_extension_file
from deepcom.families import dihedral, quaternion
from deepcom.group import Group, table_file_dict
from deepcom.homs import is_isomorphic

DATA = Path(__file__).resolve().parent.parent / "src" / "deepcom" / "data"


def klein() -> Group:
    # a, b commuting involutions; index order 1, a, b, ab
    t = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    return Group(t, ["1", "a", "b", "ab"], "V4")


def projection_onto(H: Group, base: Group) -> list[int]:
    """H -> H/Z(H) composed with an isomorphism onto ``base``."""
    ext = central_quotient_extension(H)
    iso = is_isomorphic(ext.base, base)
    if iso is None:
        raise SystemExit(f"{H.name}/Z is not isomorphic to {base.name}")
    return [int(iso[c]) for c in ext.projection]


def write_json(path: Path, data: dict) -> None:
    path.write_text(json.dumps(data, separators=(",", ":")) + "\n")
    print("wrote", path.relative_to(DATA.parent.parent.parent))


def main(argv=None) -> None:
    argparse.ArgumentParser(description=__doc__).parse_args(argv)
    tables = {"klein": klein(), "d8": dihedral(8), "q8": quaternion(8), "d16": dihedral(16)}
    for stem, G in tables.items():
        write_json(DATA / f"{stem}.json", table_file_dict(G))
    for total, base in (("d8", "klein"), ("q8", "klein"), ("d16", "d8")):
        pi = projection_onto(tables[total], tables[base])
        path = DATA / f"{total}_over_{base if base != 'klein' else 'v4'}.json"
        write_json(path, {"total": f"{total}.json", "base": f"{base}.json", "projection": pi})
        ext = load_extension_file(path)
        print(f"  kernel {ext.kernel}, base {ext.base.name}")


if __name__ == "__main__":
    main()
