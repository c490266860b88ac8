from __future__ import annotations

import csv
import io
import json
from typing import TYPE_CHECKING

import pytest

import projclose
from projclose.cli import main

from .conftest import DENSE, FIVE_POINT, basis_of

if TYPE_CHECKING:
    import pathlib

DENSE_ARG = "1,0,0;1,1,0;1,1,1"


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_classify_tripod(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    output = tmp_path / "tripod"
    code, out = _run(capsys, "classify", "--basis", "1,0,0;0,1,0;0,0,1", "--output", str(output))
    assert code == 0

    report = json.loads(out)
    assert report["classification"]["kind"] == "degenerate_tripod"
    assert report["classification"]["dots"] == ["0", "0", "0"]
    assert "trace" not in report
    assert "density" not in report
    assert json.loads((tmp_path / "tripod.json").read_text()) == report
    assert not (tmp_path / "tripod.csv").exists()


def test_report_embeds_config(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(
        capsys,
        "closure",
        "--basis", "2,0,0;0,1/2,0;0,1,1",
        "--seed", "7",
        "--threads", "1",
        "--output", str(tmp_path / "r"),
    )
    assert code == 0
    config = json.loads(out)["config"]
    assert config["command"] == "closure"
    assert config["basis"] == [["2", "0", "0"], ["0", "1/2", "0"], ["0", "1", "1"]]
    assert config["seed"] == 7
    assert config["caps"]["max_level"] == 6
    assert "threads" not in config
    assert "timings" not in config


def test_closure_five_point_csv(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    output = tmp_path / "five"
    code, out = _run(
        capsys,
        "closure",
        "--basis", "1,0,0;0,1,0;0,1,1",
        "--format", "csv",
        "--threads", "1",
        "--output", str(output),
    )
    assert code == 0

    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["level", "x1", "x2", "x3"]
    assert len(rows) == 6
    for level, *coords in rows[1:]:
        point = projclose.canonicalize([int(c) for c in coords])
        assert list(point.coords) == [int(c) for c in coords]
        assert int(level) in {1, 2}
    assert (tmp_path / "five.csv").read_text() == out

    report = json.loads((tmp_path / "five.json").read_text())
    assert report["stabilized"] is True
    assert report["cap_hit"] == "none"
    assert report["points"] == 5
    assert [r["new_points"] for r in report["trace"]] == [3, 2, 0]
    assert all("ms" not in r for r in report["trace"])


def test_closure_timings(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(
        capsys, "closure", "--basis", "1,0,0;0,1,0;0,1,1", "--timings", "--threads", "1",
        "--output", str(tmp_path / "t"),
    )
    assert code == 0
    assert all("ms" in r for r in json.loads(out)["trace"])


def test_density_dense(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(
        capsys,
        "density",
        "--basis", DENSE_ARG,
        "--levels", "5",
        "--samples", "10000",
        "--threads", "1",
        "--output", str(tmp_path / "dense"),
    )
    assert code == 0
    report = json.loads(out)
    assert report["classification"]["kind"] == "dense_infinite"
    assert report["cap_hit"] == "level_cap"
    radii = [lvl["covering_radius"] for lvl in report["density"]]
    assert len(radii) == 5
    assert all(b < a for a, b in zip(radii[1:], radii[2:], strict=False))


def test_verify_five_point(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(
        capsys, "verify", "--basis", "1,0,0;0,1,0;0,1,1", "--sample-budget", "200",
        "--threads", "1", "--output", str(tmp_path / "v"),
    )
    assert code == 0
    report = json.loads(out)
    assert report["axioms"]["p3_found"] is False
    assert report["axioms"]["p2_failures"] == 0
    assert report["shape"]["kind"] == "line_plus_point"
    assert report["shape"]["apex"]["coords"] == ["1", "0", "0"]


@pytest.mark.parametrize(
    "basis",
    [
        "1,0,0;0,1,0;1,1,0",
        "1,0,0;2,0,0;0,0,1",
        "0,0,0;0,1,0;0,0,1",
        "1,0;0,1,0;0,0,1",
        "1,0,0;0,1,0",
        "a,0,0;0,1,0;0,0,1",
        "1/0,0,0;0,1,0;0,0,1",
        "0.5,0,0;0,1,0;0,0,1",
    ],
)
def test_invalid_basis_exits_with_2(
    basis: str, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code, out = _run(capsys, "closure", "--basis", basis, "--threads", "1", "--output", str(tmp_path / "x"))
    assert code == 2
    assert out == ""
    assert not (tmp_path / "x.json").exists()


def test_approx_floats(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(
        capsys, "classify", "--basis", "0.5,0,0;0,0.25,0;0,0,1", "--approx-floats",
        "--output", str(tmp_path / "f"),
    )
    assert code == 0
    report = json.loads(out)
    assert report["config"]["basis"][0] == ["1/2", "0", "0"]
    assert report["classification"]["kind"] == "degenerate_tripod"


def test_moebius(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "moebius", "--levels", "2", "--output", str(tmp_path / "m"))
    assert code == 0
    report = json.loads(out)
    rounds = report["moebius"]
    assert [r["round"] for r in rounds] == [1, 2]
    assert rounds[0]["points"] == 7
    assert rounds[0]["new_points"] == 3
    assert report["points"] == rounds[-1]["points"]
    assert "classification" not in report
    assert report["config"]["rounds"] == 2


def test_moebius_zero_rounds(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "moebius", "--levels", "0", "--output", str(tmp_path / "m"))
    assert code == 0
    report = json.loads(out)
    assert report["moebius"] == []
    assert report["points"] == 4
    assert report["config"]["rounds"] == 0
    assert len((tmp_path / "m.csv").read_text().splitlines()) == 5

    code, _ = _run(capsys, "moebius", "--levels", "-1", "--output", str(tmp_path / "m"))
    assert code == 2
    code, _ = _run(
        capsys, "closure", "--basis", "1,0,0;0,1,0;0,0,1", "--levels", "0", "--threads", "1",
        "--output", str(tmp_path / "c"),
    )
    assert code == 2


def test_moebius_collinear_quadrangle(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code, _ = _run(
        capsys, "moebius", "--quadrangle", "1,0,0;0,1,0;1,1,0;0,0,1", "--output", str(tmp_path / "m")
    )
    assert code == 2


def test_moebius_point_cap_exits_with_3(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code, out = _run(capsys, "moebius", "--max-points", "10", "--output", str(tmp_path / "m"))
    assert code == 3
    assert out == ""


def test_csv_format_needs_points(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, _ = _run(
        capsys, "classify", "--basis", "1,0,0;0,1,0;0,0,1", "--format", "csv",
        "--output", str(tmp_path / "c"),
    )
    assert code == 2


def test_reports_do_not_depend_on_threads(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
) -> None:
    output = tmp_path / "dense"
    argv = ["closure", "--basis", DENSE_ARG, "--levels", "4", "--output", str(output)]

    assert _run(capsys, *argv, "--threads", "1")[0] == 0
    serial_json = (tmp_path / "dense.json").read_bytes()
    serial_csv = (tmp_path / "dense.csv").read_bytes()

    assert _run(capsys, *argv, "--threads", "8")[0] == 0
    assert (tmp_path / "dense.json").read_bytes() == serial_json
    assert (tmp_path / "dense.csv").read_bytes() == serial_csv


def test_threads_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PROJCLOSE_THREADS", "3")
    assert projclose.default_threads() == 3
    monkeypatch.delenv("PROJCLOSE_THREADS")
    assert projclose.default_threads() >= 1


@pytest.mark.parametrize("value", ["abc", "0", "-2", "1.5"])
def test_bad_threads_environment_exits_with_2(
    value: str,
    monkeypatch: pytest.MonkeyPatch,
    tmp_path: pathlib.Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    monkeypatch.setenv("PROJCLOSE_THREADS", value)
    with pytest.raises(projclose.InvalidInput):
        projclose.default_threads()

    code, out = _run(
        capsys, "classify", "--basis", "1,0,0;0,1,0;0,0,1", "--output", str(tmp_path / "e")
    )
    assert code == 2
    assert out == ""

    code, _ = _run(
        capsys, "classify", "--basis", "1,0,0;0,1,0;0,0,1", "--threads", "2",
        "--output", str(tmp_path / "e"),
    )
    assert code == 0


@pytest.mark.asyncio
async def test_lab_requires_start() -> None:
    lab = projclose.ProjectiveLab()
    with pytest.raises(RuntimeError):
        await lab.run_closure(basis_of(DENSE))


@pytest.mark.asyncio
async def test_lab(tmp_path: pathlib.Path) -> None:
    caps = projclose.ClosureCaps(max_level=4)
    async with projclose.ProjectiveLab(caps=caps, samples=2_000, sample_budget=200) as lab:
        store, trace = await lab.run_closure(basis_of(FIVE_POINT))
        assert len(store) == 5
        assert trace.stabilized

        classification = await lab.classify(basis_of(FIVE_POINT))
        assert classification.kind is projclose.ClassificationKind.DEGENERATE_FIVE_POINT

        _, dense_trace, density = await lab.density(basis_of(DENSE))
        assert [lvl.level for lvl in density.levels] == [r.level for r in dense_trace.levels]

        _, _, axioms, shape = await lab.verify(basis_of(DENSE))
        assert axioms.p3_found
        assert shape is None

        net = await lab.moebius(projclose.STANDARD_QUADRANGLE, 1)
        assert len(net) == 7

        await lab.save_points(store, tmp_path / "points.csv")
        lines = (tmp_path / "points.csv").read_text().splitlines()
        assert lines[0] == "level,x1,x2,x3"
        assert len(lines) == 6
