import json
from pathlib import Path

from fano_lattice.lattice import Lattice

GOLDEN = Path(__file__).parent / "golden" / "scenario_t237.txt"

DP4_SURFACE = {
    "lattice": {"labels": ["A"], "gram": [[1]]},
    "canonical": [-2],
    "chi": 1,
}


def test_scenario_exits_zero(run_cli):
    proc = run_cli("scenario", "t237")
    assert "result: PASS" in proc.stdout


def test_scenario_perturbed_exits_one(run_cli):
    proc = run_cli("scenario", "t237", "--perturb", expect=1)
    assert "FAIL" in proc.stdout


def test_scenario_matches_golden_file(run_cli):
    proc = run_cli("scenario", "t237")
    assert proc.stdout == GOLDEN.read_text(encoding="utf-8")


def test_scenario_runs_are_byte_identical(run_cli):
    a = run_cli("scenario", "t237", "--json")
    b = run_cli("scenario", "t237", "--json")
    assert a.stdout == b.stdout


def test_scenario_supersingular_flag(run_cli):
    proc = run_cli("scenario", "t237", "--supersingular", "--json")
    data = json.loads(proc.stdout)
    assert data["enriques_kind"] == "supersingular"
    assert data["passed"] is True


def test_lattice_disc_output(run_cli):
    proc = run_cli("lattice", "--name", "D5", "--disc")
    assert proc.stdout.strip() == "Z/4"


def test_lattice_summary(run_cli):
    proc = run_cli("lattice", "--name", "T237")
    assert "rank 10" in proc.stdout
    assert "indefinite" in proc.stdout


def test_lattice_json_round_trips(run_cli):
    proc = run_cli("lattice", "--name", "E8", "--json")
    data = json.loads(proc.stdout)
    lat = Lattice.from_json(data["lattice"])
    assert lat.rank == 8
    assert data["determinant"] == 1


def test_lattice_from_graph_file(run_cli, write_json):
    graph = {
        "vertices": [{"label": "A", "self": -2}, {"label": "B", "self": -2}],
        "edges": [["A", "B", 1]],
    }
    proc = run_cli("lattice", "--graph", write_json("g.json", graph), "--disc")
    assert proc.stdout.strip() == "Z/3"


def test_chi_non_integral_output(run_cli, write_json):
    surface = write_json("dp4.json", DP4_SURFACE)
    divisor = write_json("a.json", [1])
    proc = run_cli("chi", "--surface", surface, "--divisor", divisor)
    assert proc.stdout.strip() == "5/2 (NON-INTEGRAL)"


def test_chi_integral_output(run_cli, write_json):
    surface = write_json("dp4.json", DP4_SURFACE)
    divisor = write_json("mk.json", [2])
    proc = run_cli("chi", "--surface", surface, "--divisor", divisor)
    assert proc.stdout.strip() == "5"


def test_contract_command(run_cli, write_json):
    from fano_lattice.fano import load_fixture

    surface = write_json("t237.json", load_fixture("t237_surface.json"))
    proc = run_cli("contract", "--surface", surface, "--curves", "C1..C8,C9", "--json")
    data = json.loads(proc.stdout)
    assert data["surface"]["lattice"]["gram"] == [[2]]
    assert data["contracted"] == ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9"]


def test_pullback_forward(run_cli, write_json):
    from fano_lattice.fano import load_fixture

    cfg = load_fixture("d5_resolution.json")
    cfg.pop("rational_self")
    proc = run_cli("pullback", "--config", write_json("d5.json", cfg))
    assert "(1/4, 1/2, 3/4, 1/2, 1/2)" in proc.stdout
    assert "1/4" in proc.stdout


def test_pullback_reverse(run_cli, write_json):
    from fano_lattice.fano import load_fixture

    cfg = load_fixture("d5_resolution.json")
    cfg.pop("strict_self")
    proc = run_cli("pullback", "--config", write_json("d5.json", cfg))
    assert proc.stdout.strip() == "strict transform square -3/2 (NON-INTEGRAL)"


def test_hw_command(run_cli, write_json):
    matrix = write_json("a.json", [[[0, 1]]])  # the generator of GF(4)
    proc = run_cli("hw", "--field", "p=2,e=2", "--matrix", matrix, "--json")
    data = json.loads(proc.stdout)
    assert data == {"rank": 1, "max_rank": True, "det_class": "1"}


def test_witt_add_command(run_cli):
    proc = run_cli(
        "witt", "--field", "p=2", "--length", "2", "--op", "add",
        "--a", "[1,0]", "--b", "[1,0]",
    )
    assert proc.stdout.strip() == "[0, 1]"


def test_witt_verschiebung_command(run_cli):
    proc = run_cli(
        "witt", "--field", "p=2", "--length", "2", "--op", "verschiebung",
        "--a", "[1,1]",
    )
    assert proc.stdout.strip() == "[0, 1]"


def test_upsilon_command(run_cli):
    proc = run_cli(
        "upsilon", "--group",
        '{"p":2,"component":[6],"local_mult":[2],"local_unipotent":[]}',
    )
    assert proc.stdout.strip() == "Z/2"


def test_cone_command(run_cli):
    proc = run_cli("cone", "--dim", "2", "--degree", "4", "--m", "1", "--json")
    data = json.loads(proc.stdout)
    assert data["dim"] == 3
    assert data["degree"] == "32"
    assert data["index"] == 2


def test_malformed_json_exits_two(run_cli, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    run_cli("chi", "--surface", str(bad), "--divisor", str(bad), expect=2)


def test_missing_file_exits_two(run_cli):
    run_cli("lattice", "--graph", "no-such-file.json", expect=2)


def test_dimension_mismatch_exits_two(run_cli, write_json):
    surface = write_json("dp4.json", DP4_SURFACE)
    divisor = write_json("bad.json", [1, 2])
    run_cli("chi", "--surface", surface, "--divisor", divisor, expect=2)


def test_unknown_scenario_exits_two(run_cli):
    run_cli("scenario", "t42", expect=2)


def test_unknown_lattice_name_exits_two(run_cli):
    run_cli("lattice", "--name", "Z99", expect=2)
