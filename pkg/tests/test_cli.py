"""End-to-end tests of the command-line interface."""

import json

import pytest
from typer.testing import CliRunner

from src.cli.main import EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_UNKNOWN, app
from src.io import SCHEMA, read_result

LOAN_AT = "a=0, b=1, c=2, d=3, e=1, f=1"


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(app, [str(a) for a in args])


def json_result(runner, *args):
    result = invoke(runner, *args, "--json", "-")
    return result, json.loads(result.stdout)


# ============================================================================
# PTA
# ============================================================================

@pytest.mark.corpus
def test_ef_synth_writes_a_result_file(runner, corpus_dir, tmp_path):
    out = tmp_path / "result.json"
    result = invoke(runner, "pta", corpus_dir / "coffee.pta", "--query", "ef-synth {done}", "--json", out)
    assert result.exit_code == EXIT_OK, result.output
    document = read_result(out.read_text())
    assert document.complete
    assert document.constraints is not None
    assert [v.name for v in document.constraints.context] == ["p1", "p2", "p3"]
    assert "Result written" in result.stdout


def test_result_file_directories_are_created(runner, corpus_dir, tmp_path):
    out = tmp_path / "nested" / "lu.json"
    result = invoke(runner, "pta", corpus_dir / "coffee_lu.pta", "-q", "lu-classify", "--json", out)
    assert result.exit_code == EXIT_OK
    assert read_result(out.read_text()).details["kind"] == "LU"


def test_json_goes_to_stdout(runner, corpus_dir):
    result, data = json_result(runner, "pta", corpus_dir / "coffee.pta", "-q", "lu-classify")
    assert result.exit_code == EXIT_OK
    assert data["schema"] == SCHEMA
    assert data["details"]["kind"] == "notLU"


@pytest.mark.corpus
def test_ip_check_verdicts_map_to_exit_codes(runner, corpus_dir):
    assert invoke(runner, "pta", corpus_dir / "rational_only.pta", "-q", "ip-check").exit_code == EXIT_NO
    assert invoke(runner, "pta", corpus_dir / "integer_only.pta", "-q", "ip-check").exit_code == EXIT_OK


def test_incomplete_exploration_exits_unknown(runner, corpus_dir):
    result, data = json_result(
        runner, "pta", corpus_dir / "coffee.pta", "-q", "ip-check", "--limits", "maxStates=20"
    )
    assert result.exit_code == EXIT_UNKNOWN
    assert data["verdict"] == "unknown"
    assert data["complete"] is False


def test_replay_rejection_exits_no(runner, corpus_dir):
    result, data = json_result(
        runner, "pta", corpus_dir / "coffee.pta", "-q", "replay at (p1=1, p2=5, p3=8) [(0, press), (1, cup)]"
    )
    assert result.exit_code == EXIT_NO
    assert data["details"]["rejected_step"] == 2


def test_replay_witness(runner, corpus_dir):
    query = "replay at (p1=1, p2=5, p3=8) [(0, press), (89/50, press), (121/50, press), (4/5, cup), (3, coffee)]"
    result, data = json_result(runner, "pta", corpus_dir / "coffee.pta", "-q", query)
    assert result.exit_code == EXIT_OK
    assert data["witness"]["total_time"] == "8"
    assert data["witness"]["word"][-1] == "coffee"


def test_lu_emptiness_on_a_non_lu_model_is_an_input_error(runner, corpus_dir):
    result = invoke(runner, "pta", corpus_dir / "coffee.pta", "-q", "lu-emptiness {done}")
    assert result.exit_code == EXIT_INPUT


def test_query_from_a_file(runner, corpus_dir, tmp_path):
    query = tmp_path / "lu.q"
    query.write_text("lu-emptiness {done}\n")
    result = invoke(runner, "pta", corpus_dir / "coffee_lu.pta", "-q", query)
    assert result.exit_code == EXIT_NO


# ============================================================================
# INPUT ERRORS
# ============================================================================

def test_malformed_model_writes_nothing(runner, tmp_path):
    model = tmp_path / "broken.pta"
    model.write_text("clocks x;\nloc a invariant x <=;\n")
    out = tmp_path / "result.json"
    result = invoke(runner, "pta", model, "-q", "ip-check", "--json", out)
    assert result.exit_code == EXIT_INPUT
    assert not out.exists()


@pytest.mark.parametrize("limits", ["maxStates=zero", "colour=3", "maxStates=0"])
def test_bad_limits_are_input_errors(runner, corpus_dir, limits):
    result = invoke(runner, "pta", corpus_dir / "coffee.pta", "-q", "ip-check", "--limits", limits)
    assert result.exit_code == EXIT_INPUT


def test_missing_model_file(runner, tmp_path):
    assert invoke(runner, "ppn", tmp_path / "absent.ppn", "-q", "bounded").exit_code == EXIT_INPUT


def test_query_for_another_formalism(runner, corpus_dir):
    assert invoke(runner, "pta", corpus_dir / "coffee.pta", "-q", "consistency-synth").exit_code == EXIT_INPUT


def test_valuation_outside_the_domain(runner, corpus_dir):
    result = invoke(runner, "pimc", corpus_dir / "param_intervals.pimc", "-q", "consistent at (p=2, q=1/2)")
    assert result.exit_code == EXIT_INPUT


# ============================================================================
# OTHER FORMALISMS
# ============================================================================

@pytest.mark.corpus
def test_pimc_queries(runner, corpus_dir):
    result, data = json_result(runner, "pimc", corpus_dir / "param_intervals.pimc", "-q", "consistency-synth")
    assert result.exit_code == EXIT_OK
    assert data["constraints"]["disjuncts"]

    assert invoke(runner, "pimc", corpus_dir / "intervals.imc", "-q", "consistent").exit_code == EXIT_OK
    assert invoke(runner, "pimc", corpus_dir / "intervals.imc", "-q", "n-consistent s4 0").exit_code == EXIT_NO
    assert invoke(runner, "pimc", corpus_dir / "intervals.imc", "-q", "satisfies chain.mc").exit_code == EXIT_OK


@pytest.mark.corpus
def test_mts_synthesis(runner, corpus_dir):
    result, data = json_result(runner, "mts", corpus_dir / "robot.mts", "-q", "E[Y] G (E[Z] F safe)")
    assert result.exit_code == EXIT_OK
    valuations = data["valuations"]
    assert valuations["initial"] == "s0"
    assert len(valuations["states"]["s0"]) == 120
    assert all(v["Z"] == ["forw"] for v in valuations["minimal"])


def test_mts_check(runner, corpus_dir):
    query = "check at (Y={left}, Z={back}) E[Y] G (E[Z] F safe)"
    result, data = json_result(runner, "mts", corpus_dir / "robot.mts", "-q", query)
    assert result.exit_code == EXIT_NO
    assert data["details"]["satisfying_states"] == ["s3"]


@pytest.mark.corpus
def test_ppn_queries(runner, corpus_dir):
    result, data = json_result(runner, "ppn", corpus_dir / "loan.ppn", "-q", "exists cover {loanFinished: 1}")
    assert result.exit_code == EXIT_OK
    assert data["details"]["subclasses"] == []
    assert data["witness"]["sequence"]

    result, data = json_result(runner, "ppn", corpus_dir / "loan.ppn", "-q", f"bounded at ({LOAN_AT})")
    assert result.exit_code == EXIT_OK
    assert data["net"]["bounded"] is True


def test_text_rendering(runner, corpus_dir):
    result = invoke(runner, "ppn", corpus_dir / "loan.ppn", "-q", f"reach {{loanFinished: 1}} at ({LOAN_AT})")
    assert result.exit_code == EXIT_UNKNOWN
    assert "ppn:" in result.stdout


def test_show_prints_the_normalized_model(runner, corpus_dir):
    result = invoke(runner, "show", corpus_dir / "robot.mts")
    assert result.exit_code == EXIT_OK
    assert "trans s0 -forw-> s3;" in result.stdout
