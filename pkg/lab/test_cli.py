import json
import os
import sys
from pathlib import Path

import jsonschema
import pytest
from typer.testing import CliRunner

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../')))

from config.settings import Settings, use_settings
from conformal.cend import CendElem
from main import SCHEMAS, app

runner = CliRunner()


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in Settings.model_fields:
        monkeypatch.delenv(f"CEND_{name.upper()}", raising=False)
    yield
    use_settings(None)


def run(*args):
    return runner.invoke(app, list(args))


def run_json(*args):
    result = run("--json", *args)
    return result, json.loads(result.stdout)


def text(result):
    return result.stdout + result.stderr


def test_product():
    result = run("product", "--n", "1", "[[v]]", "[[v^2]]")
    assert result.exit_code == 0
    assert result.stdout.strip() == "[[2*v^2]]"


def test_product_json():
    result, payload = run_json("product", "--n", "1", "v", "v^2")
    assert result.exit_code == 0
    assert payload["product"] == str(CendElem.parse("2*v^2"))
    assert payload["n"] == 1


def test_parse_error_exits_with_2():
    result = run("product", "--n", "1", "[[v]", "[[v]]")
    assert result.exit_code == 2
    assert "Error:" in text(result)
    assert "unbalanced bracket at column 5" in text(result)


def test_size_mismatch_exits_with_2():
    result = run("product", "[[1, 0], [0, 1]]", "v")
    assert result.exit_code == 2
    assert "size mismatch" in text(result)


def test_locality():
    result, payload = run_json("locality", "v", "v^2")
    assert payload["locality"] == 3
    assert payload["bound"] >= 3


def test_normal_form():
    result = run("normal-form", "qqp")
    assert result.exit_code == 0
    assert result.stdout.strip() == "p*q^2 + 2*q"


def test_identities_on_a_broken_table_fail():
    result = run("identities", "--broken", "[[1, 0], [0, 0]]", "[[1, 0], [0, 0]]", "[[0, 1], [0, 0]]")
    assert result.exit_code == 1


def test_identities_need_three_elements():
    result = run("identities", "v", "v")
    assert result.exit_code == 2


def test_random_is_seeded():
    first = run("--seed", "7", "--json", "random", "--count", "2")
    second = run("--seed", "7", "--json", "random", "--count", "2")
    assert first.exit_code == 0
    assert json.loads(first.stdout) == json.loads(second.stdout)
    assert json.loads(first.stdout)["seed"] == 7


def test_span_membership():
    result, payload = run_json("span", "[[1, v], [0, 0]]", "--bound", "2", "--member", "[[D, D*v], [0, 0]]")
    assert result.exit_code == 0
    assert payload["member"]["member"] is True
    assert payload["member"]["witness"] == ["D"]


def test_span_from_a_yaml_file(tmp_path):
    doc = tmp_path / "curr.yaml"
    doc.write_text("generators:\n  - '[[1, 0], [0, 0]]'\n  - '[[0, 1], [0, 0]]'\n", encoding="utf-8")
    result, payload = run_json("span", f"@{doc}", "--bound", "0")
    assert result.exit_code == 0
    assert payload["span"]["rank"] == 2


def test_tc_curr():
    result = run("tc", "curr", "--n", "2", "--max-index", "2")
    assert result.exit_code == 0


def test_lift_idempotent_zero_only():
    result, payload = run_json("lift", "idempotent", "triangular-3", "--zero-only")
    assert result.exit_code == 0
    assert payload["passed"] is True
    assert payload["iterations"]["lift-idempotent"] == 1
    expected = CendElem.unit(3, 0, 0) + CendElem.unit(3, 1, 1)
    assert payload["lifted"]["idempotent"] == str(expected)


def test_lift_matrix_units():
    result, payload = run_json("lift", "matrix-units", "curr2")
    assert result.exit_code == 0
    assert set(payload["units"]) == {"e11", "e12", "e21", "e22"}


def test_lift_rejects_a_fixture_without_input():
    result = run("lift", "generator", "triangular-3")
    assert result.exit_code == 2


def test_unknown_fixture():
    result = run("split", "nope")
    assert result.exit_code == 1
    assert "unknown fixture" in text(result)


def test_split_triangular():
    result, payload = run_json("split", "triangular-3")
    assert result.exit_code == 0
    assert payload["passed"] is True
    assert payload["rank"] == 3


def test_split_counterexample_has_no_unit():
    result = run("split", "counterexample")
    assert result.exit_code == 1
    assert "unit-lifting" in text(result)


def test_obstruction_json():
    result, payload = run_json("counterexample", "obstruction", "--K", "1")
    assert result.exit_code == 0
    assert payload["verified"] is True
    assert payload["constant"] == "1"
    assert payload["witness"]["discrepancy"] == "1"


def test_forced_psi():
    result, payload = run_json("counterexample", "forced-psi", "--K", "2")
    assert result.exit_code == 0
    assert payload["dimension"] == 2


def test_schemas(tmp_path):
    result = run("schemas", str(tmp_path))
    assert result.exit_code == 0
    written = sorted(p.name for p in tmp_path.iterdir())
    assert written == sorted(f"{name}.schema.json" for name in SCHEMAS)
    schema = json.loads((tmp_path / "lift-report.schema.json").read_text(encoding="utf-8"))
    assert "transcript" in schema["properties"]


def test_export_writes_a_note(tmp_path):
    result = run("--export", str(tmp_path), "lift", "idempotent", "triangular-3", "--zero-only")
    assert result.exit_code == 0
    note = tmp_path / "lift-idempotent-triangular-3.md"
    content = note.read_text(encoding="utf-8")
    assert content.startswith("---\n")
    assert "passed: true" in content
    assert "## Transcript" in content


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv("CEND_SWEEP_MAX_K", "0")
    result = run("normal-form", "qp")
    assert result.exit_code == 2


def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("CEND_SWEEP_MAX_K", "3")
    monkeypatch.setenv("CEND_SEED", "11")
    settings = Settings.from_env(seed=5)
    assert settings.sweep_max_k == 3
    assert settings.seed == 5


def test_settings_from_a_dotenv_file(tmp_path):
    env = tmp_path / "cend.env"
    env.write_text("CEND_CHECK_MARGIN=5\nCEND_RANDOM_SIZE=\nOTHER_TOOL_KEY=x\n", encoding="utf-8")
    settings = Settings.from_env(dotenv_path=env, seed=3)
    assert settings.check_margin == 5
    assert settings.random_size == 2
    assert settings.seed == 3


def test_environment_wins_over_the_dotenv_file(monkeypatch, tmp_path):
    env = tmp_path / "cend.env"
    env.write_text("CEND_ITERATION_CAP=7\n", encoding="utf-8")
    monkeypatch.setenv("CEND_ITERATION_CAP", "9")
    assert Settings.from_env(dotenv_path=env).iteration_cap == 9


SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def committed_schema(name):
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text(encoding="utf-8"))


def _shape(node):
    """A schema without titles and descriptions, required lists sorted"""
    if isinstance(node, dict):
        out = {}
        for key, value in node.items():
            if key in ("title", "description"):
                continue
            out[key] = sorted(value) if key == "required" else _shape(value)
        return out
    if isinstance(node, list):
        return [_shape(x) for x in node]
    return node


@pytest.mark.parametrize("args, schema, pick", [
    (("split", "triangular-3"), "split-result", lambda p: [p]),
    (("split", "curr2-radical"), "split-result", lambda p: [p]),
    (("lift", "idempotent", "triangular-3", "--zero-only"), "lift-report", lambda p: [p]),
    (("identities", "v", "D*v", "v^2"), "identity-report", lambda p: p["reports"]),
    (("counterexample", "obstruction", "--K", "1"), "obstruction-certificate", lambda p: [p]),
    (("counterexample", "forced-psi", "--K", "2"), "psi-ansatz", lambda p: [p]),
    (("counterexample", "sweep", "--max-k", "1"), "sweep-entry", lambda p: p["entries"]),
    (("counterexample", "verify-closure", "--count", "2", "--degree", "2"), "counterexample-check", lambda p: [p]),
    (("tc", "curr", "--n", "2", "--max-index", "2"), "tc-report", lambda p: [p]),
])
def test_json_output_matches_the_committed_schema(args, schema, pick):
    result, payload = run_json(*args)
    assert result.exit_code == 0
    documents = pick(payload)
    assert documents
    for doc in documents:
        jsonschema.validate(instance=doc, schema=committed_schema(schema))


def test_schema_validation_rejects_a_broken_document():
    result, payload = run_json("split", "triangular-3")
    assert result.exit_code == 0
    del payload["span"]
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(instance=payload, schema=committed_schema("split-result"))


def test_committed_schemas_match_the_models(tmp_path):
    result = run("schemas", str(tmp_path))
    assert result.exit_code == 0
    committed = sorted(p.name for p in SCHEMA_DIR.glob("*.schema.json"))
    assert committed == sorted(p.name for p in tmp_path.iterdir())
    for name in SCHEMAS:
        fresh = json.loads((tmp_path / f"{name}.schema.json").read_text(encoding="utf-8"))
        assert _shape(fresh) == _shape(committed_schema(name)), f"schemas/{name}.schema.json is stale"


def test_schema_drift_is_detected():
    schema = committed_schema("split-result")
    schema["properties"]["extra"] = {"type": "string"}
    assert _shape(schema) != _shape(SCHEMAS["split-result"].model_json_schema())
