"""Incidence-table text format: export, import, sidecars, round trips."""

import json

import pytest

from rm2pn.incidence import (
    IncidenceParseError,
    export_incidence,
    import_incidence,
    load_net,
    save_net,
    sidecar_path,
)
from rm2pn.nets import Net, NetError, metrics

from conftest import GOLDEN_DIR, GOLDEN_NAMES

TINY = Net(
    places=["Q1", "Q2", "R0"],
    transitions=["a", "b"],
    weight={
        ("Q1", "a"): 1, ("a", "Q2"): 1, ("R0", "a"): -1,
        ("Q2", "b"): 1, ("b", "Q1"): 1, ("b", "R0"): 2,
    },
    initial_marking={"Q1": 1},
    input_places=["R0"],
    output_place="R0",
)


def same_structure(a: Net, b: Net) -> bool:
    return (
        set(a.places) == set(b.places)
        and set(a.transitions) == set(b.transitions)
        and a.weight == b.weight
        and a.initial_marking == b.initial_marking
        and tuple(a.input_places) == tuple(b.input_places)
        and a.output_place == b.output_place
    )


def test_export_format_exact():
    text = export_incidence(TINY)
    assert text == (
        "\tQ1\tQ2\tR0\n"
        "a\t1,0\t0,1\t-1,0\n"
        "b\t0,1\t1,0\t0,2\n"
    )


def test_export_orders_register_places_last():
    net = Net(["R0", "Q1"], ["t"], {("Q1", "t"): 1, ("t", "R0"): 1})
    assert export_incidence(net).splitlines()[0] == "\tQ1\tR0"


def test_export_empty_net_is_header_only():
    assert export_incidence(Net([], [], {})) == "\n"


def test_single_cell_table():
    net = import_incidence("\tP\nT\t1,0\n")
    assert net.places == ("P",)
    assert net.transitions == ("T",)
    assert net.weight == {("P", "T"): 1}


def test_round_trip_tsv_and_csv():
    for delim in ("\t", ","):
        text = export_incidence(TINY, delim)
        back = import_incidence(
            text, delim,
            initial_marking=TINY.initial_marking,
            input_places=TINY.input_places,
            output_place=TINY.output_place,
        )
        assert same_structure(TINY, back)


def test_round_trip_goldens(goldens):
    for name in GOLDEN_NAMES:
        net = goldens[name]
        back = import_incidence(
            export_incidence(net),
            initial_marking=net.initial_marking,
            input_places=net.input_places,
            output_place=net.output_place,
        )
        assert same_structure(net, back), name


def test_malformed_cell_reports_location():
    with pytest.raises(IncidenceParseError) as err:
        import_incidence("\tP\nT\t1;0\n")
    assert err.value.row == 2
    assert err.value.column == 2


def test_bad_consume_weight_rejected():
    with pytest.raises(IncidenceParseError):
        import_incidence("\tP\nT\t-2,0\n")


def test_duplicate_names_rejected():
    with pytest.raises(NetError):
        import_incidence("\tP\tP\nT\t1,0\t0,1\n")
    with pytest.raises(NetError):
        import_incidence("\tP\nT\t1,0\nT\t0,1\n")


def test_inhibitor_count_matches_exported_text(goldens):
    n3 = goldens["n3"]
    text = export_incidence(n3)
    cells = [c for line in text.splitlines()[1:] for c in line.split("\t")[1:]]
    assert sum(1 for c in cells if c.startswith("-1,")) == metrics(n3).h == 79


def test_sidecar_round_trip(tmp_path):
    table = tmp_path / "tiny.tsv"
    save_net(TINY, table)
    meta = json.loads(sidecar_path(table).read_text())
    assert meta == {
        "initial_marking": {"Q1": 1},
        "input_places": ["R0"],
        "output_place": "R0",
    }
    assert same_structure(load_net(table), TINY)


def test_load_net_missing_explicit_meta(tmp_path):
    table = tmp_path / "t.tsv"
    table.write_text(export_incidence(TINY))
    with pytest.raises(NetError):
        load_net(table, tmp_path / "absent.json")


def test_golden_files_ship_with_sidecars():
    for name in GOLDEN_NAMES:
        assert (GOLDEN_DIR / f"{name}.tsv").exists()
        assert (GOLDEN_DIR / f"{name}.tsv.meta.json").exists()
    n1 = load_net(GOLDEN_DIR / "n1.tsv")
    assert n1.initial_marking == {"Q1": 1}
    assert n1.input_places == ("R1", "R2")
    assert n1.output_place == "R0"
