"""Regenerate the golden files under tests/golden/.

    python scripts/make_golden.py

Files are keyed by construction and parameters; the test suite compares
fresh output against them byte for byte.
"""

from pathlib import Path

from multiset_ekr.bijection import dump_map
from multiset_ekr.families import (
    above_half_family,
    frankl_plus_family,
    half_selection_family,
    level_family,
    star_family,
    t_star_family,
)
from multiset_ekr.kneser import GraphSpec, export_graph

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def families():
    yield "star_m4_k3_x2", star_family(4, 3, 2)
    yield "tstar_m7_k5_T12", t_star_family(7, 5, [1, 2])
    yield "level_m4_k4_j2", level_family(4, 4, 2)
    yield "abovehalf_m3_k3", above_half_family(3, 3)
    yield "abovehalf_m4_k4", above_half_family(4, 4)
    yield "halfsel_m4_k4_default", half_selection_family(4, 4)
    yield "franklplus_m7_k5_t2_F1234", frankl_plus_family(7, 5, 2, {1, 2, 3, 4})


def graphs():
    yield "M_3_2_1", GraphSpec.multiset(3, 2)
    yield "M_3_3_1", GraphSpec.multiset(3, 3)
    yield "K_4_2_1", GraphSpec.set(4, 2)
    yield "M_4_3_2", GraphSpec.multiset(4, 3, 2)


def outputs():
    for name, fam in families():
        yield f"{name}.json", fam.dumps() + "\n"
        yield f"{name}.txt", fam.to_text()
    for name, spec in graphs():
        yield f"{name}.col", export_graph(spec).decode()
    yield "phi_map_m4_k3.txt", dump_map(4, 3)


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, text in outputs():
        (GOLDEN / name).write_text(text)
        print(name)


if __name__ == "__main__":
    main()
