import json
from io import StringIO

import pandas as pd
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from experiments.models import ExperimentRun
from networks.factories import disjoint_triangles, uniform_network
from networks.formats import content_hash, serialize
from networks.models import Network

from .commands import CONFIG_ERROR, IO_ERROR, read_network
from .config import ConfigError, merge, output_dir, read_config, threads
from .manifest import MANIFEST_NAME, sha256_file

CONSENSUS_CONFIG = {
    "study": "consensus",
    "cells": [{"n": 10, "d": 2, "beta": 0.2}, {"n": 10, "d": 4, "beta": 0.0}],
    "trials": 3,
    "models": ["wm", "degroot"],
    "master_seed": 7,
}


def run(*args, **options) -> str:
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO(), **options)
    return out.getvalue()


def write_network(path, network):
    path.write_bytes(serialize(network, "csv" if path.suffix == ".csv" else "json"))
    return path


def exit_code(*args, **options) -> int:
    with pytest.raises(CommandError) as excinfo:
        run(*args, **options)
    return excinfo.value.returncode


class TestConfig:
    def test_flags_override_config(self):
        assert merge({"n": 10, "seed": 1}, n=20, seed=None) == {"n": 20, "seed": 1}

    def test_config_must_be_an_object(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            read_config(path)

    def test_no_config(self):
        assert read_config(None) == {}

    def test_threads(self, settings):
        settings.MEDYN_THREADS = 3
        assert threads(None) == 3
        assert threads(2) == 2
        with pytest.raises(ConfigError):
            threads(0)

    def test_output_dir_default(self, results_dir):
        assert output_dir(None) == results_dir


class TestGenerate:
    def test_same_seed_same_bytes(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for path in (first, second):
            run("generate", "--family", "ws", "--n", "30", "--d", "4", "--beta", "0.1", "--seed", "11", "--out", str(path))
        assert first.read_bytes() == second.read_bytes()

    def test_writes_a_manifest(self, tmp_path):
        path = tmp_path / "net.csv"
        stdout = run("generate", "--family", "ba", "--n", "20", "--m", "2", "--seed", "4", "--out", str(path))

        manifest = json.loads((tmp_path / "net.manifest.json").read_text())
        assert manifest["command"] == "generate"
        assert manifest["master_seed"] == "4"
        assert manifest["files"][0]["sha256"] == sha256_file(path)
        assert stdout.split() == [str(path), content_hash(read_network(path))]

    def test_config_file(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"family": "ba", "n": 12, "m": 1, "seed": 5}))
        path = tmp_path / "net.json"
        run("generate", "--config", str(config), "--n", "15", "--out", str(path))
        assert read_network(path).n == 15

    def test_default_output(self, results_dir):
        run("generate", "--family", "ba", "--n", "8", "--m", "1")
        assert (results_dir / "network.json").exists()

    @pytest.mark.django_db
    def test_record(self, tmp_path):
        run("generate", "--family", "ba", "--n", "8", "--m", "1", "--seed", "2", "--record", "--out", str(tmp_path / "n.json"))
        stored = Network.objects.get()
        assert stored.n == 8
        assert stored.family == "barabasi_albert"

    def test_missing_size(self, tmp_path):
        assert exit_code("generate", "--family", "ba", "--m", "2", "--out", str(tmp_path / "n.json")) == CONFIG_ERROR

    def test_bad_parameter(self, tmp_path):
        code = exit_code("generate", "--family", "ba", "--n", "10", "--m", "0", "--out", str(tmp_path / "n.json"))
        assert code == CONFIG_ERROR

    def test_missing_config_file(self, tmp_path):
        assert exit_code("generate", "--config", str(tmp_path / "absent.json")) == IO_ERROR

    def test_format_and_threads(self, results_dir):
        run("generate", "--family", "ba", "--n", "8", "--m", "1", "--format", "csv", "--threads", "2")
        assert (results_dir / "network.csv").read_text().startswith("i,j,w\n")
        assert exit_code("generate", "--family", "ba", "--n", "8", "--m", "1", "--threads", "0") == CONFIG_ERROR


class TestAnalyze:
    def test_two_triangles(self, tmp_path):
        path = write_network(tmp_path / "net.json", disjoint_triangles())

        report = json.loads(run("analyze", str(path)))

        assert len(report["maximal_cohesive"]) == 3
        assert report["globally_reachable"] is False
        assert report["n"] == 6
        assert "equilibrium" not in report

    def test_equilibrium_verdict(self, tmp_path):
        path = write_network(tmp_path / "net.csv", disjoint_triangles())
        opinions = tmp_path / "x.txt"
        opinions.write_text("0\n0\n0\n1\n1\n1\n")

        report = json.loads(run("analyze", str(path), "--opinions", str(opinions)))

        assert report["equilibrium"]["kind"] == "disagreement"

    def test_report_file(self, tmp_path):
        path = write_network(tmp_path / "net.json", uniform_network(3))
        out = tmp_path / "report" / "cohesion.json"

        run("analyze", str(path), "--out", str(out), "--threads", "2")

        assert json.loads(out.read_text())["globally_reachable"] is True
        assert (out.parent / "cohesion.manifest.json").exists()

    def test_link_table(self, tmp_path):
        path = write_network(tmp_path / "net.json", disjoint_triangles())
        report = json.loads(run("analyze", str(path)))

        links = pd.read_csv(StringIO(run("analyze", str(path), "--format", "csv")))

        assert list(links.columns) == ["source", "target", "link"]
        assert len(links) == len(report["decisive"]) + len(report["indecisive"]) + len(report["unchecked"])
        assert set(links["link"]) <= {"decisive", "indecisive", "unchecked"}

        written = run("analyze", str(path), "--format", "csv", "--out", str(tmp_path / "links.csv"))
        pd.testing.assert_frame_equal(pd.read_csv(written.strip()), links)

    def test_malformed_network(self, tmp_path):
        path = tmp_path / "net.json"
        path.write_text('{"n": 3, "rows": [')
        assert exit_code("analyze", str(path)) == IO_ERROR

    def test_missing_network(self, tmp_path):
        assert exit_code("analyze", str(tmp_path / "absent.json")) == IO_ERROR

    def test_wrong_opinion_count(self, tmp_path):
        path = write_network(tmp_path / "net.json", disjoint_triangles())
        opinions = tmp_path / "x.json"
        opinions.write_text("[0, 1]")
        assert exit_code("analyze", str(path), "--opinions", str(opinions)) == CONFIG_ERROR


class TestSimulate:
    def test_writes_run_files(self, tmp_path):
        network = write_network(tmp_path / "net.json", disjoint_triangles())
        out = tmp_path / "run"

        run("simulate", "--network", str(network), "--model", "wm", "--seed", "3", "--out", str(out))

        record = json.loads((out / "run.json").read_text())
        assert record["stop_reason"] == "equilibrium"
        assert record["seed"] == "3"
        trajectory = pd.read_csv(out / "trajectory.csv")
        assert list(trajectory.columns) == ["step", "agent", "opinion"]
        manifest = json.loads((out / MANIFEST_NAME).read_text())
        assert sorted(entry["path"] for entry in manifest["files"]) == ["run.json", "trajectory.csv"]

    def test_generated_network_and_given_opinions(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(
            json.dumps({"network": {"family": "ba", "n": 4, "m": 1, "seed": 1}, "opinions": [1, 1, 1, 1], "model": "degroot"})
        )
        run("simulate", "--config", str(config), "--out", str(tmp_path / "run"))

        record = json.loads((tmp_path / "run" / "run.json").read_text())
        assert record["consensus"] is True
        assert record["final_opinions"] == pytest.approx([1.0] * 4)

    def test_json_trajectory(self, tmp_path):
        network = write_network(tmp_path / "net.json", disjoint_triangles())
        out = tmp_path / "run"

        run("simulate", "--network", str(network), "--seed", "3", "--format", "json", "--threads", "2", "--out", str(out))

        rows = json.loads((out / "trajectory.json").read_text())
        assert all(set(row) == {"step", "agent", "opinion"} for row in rows)
        manifest = json.loads((out / MANIFEST_NAME).read_text())
        assert sorted(entry["path"] for entry in manifest["files"]) == ["run.json", "trajectory.json"]

    def test_needs_one_network(self, tmp_path):
        assert exit_code("simulate", "--model", "wm", "--out", str(tmp_path)) == CONFIG_ERROR

    def test_unknown_model(self, tmp_path):
        network = write_network(tmp_path / "net.json", disjoint_triangles())
        assert exit_code("simulate", "--network", str(network), "--model", "voter", "--out", str(tmp_path)) == CONFIG_ERROR


class TestExperiment:
    def config_file(self, tmp_path, document=None):
        path = tmp_path / "study.json"
        path.write_text(json.dumps(document or CONSENSUS_CONFIG))
        return path

    def test_threads_do_not_change_results(self, tmp_path):
        config = self.config_file(tmp_path)
        for workers in ("1", "2"):
            run("experiment", "--config", str(config), "--threads", workers, "--out", str(tmp_path / workers))

        for name in ("cells.csv", "trials.csv", "aggregate.json"):
            assert (tmp_path / "1" / name).read_bytes() == (tmp_path / "2" / name).read_bytes()

    def test_manifest_lists_outputs(self, tmp_path):
        out = tmp_path / "out"
        run("experiment", "--config", str(self.config_file(tmp_path)), "--seed", "9", "--out", str(out))

        manifest = json.loads((out / MANIFEST_NAME).read_text())
        assert manifest["master_seed"] == "9"
        assert manifest["config"]["resolved"]["master_seed"] == 9
        assert {entry["path"] for entry in manifest["files"]} == {"aggregate.json", "cells.csv", "trials.csv"}
        assert manifest["failures"] == []

    def test_json_tables(self, tmp_path):
        out = tmp_path / "out"
        run("experiment", "--config", str(self.config_file(tmp_path)), "--format", "json", "--out", str(out))

        cells = json.loads((out / "cells.json").read_text())
        assert len(cells) == 2 * 2
        assert all(cell["trials"] == 3 for cell in cells)
        manifest = json.loads((out / MANIFEST_NAME).read_text())
        assert {entry["path"] for entry in manifest["files"]} == {"aggregate.json", "cells.json", "trials.json"}

    def test_trials_override(self, tmp_path):
        out = tmp_path / "out"
        run("experiment", "--config", str(self.config_file(tmp_path)), "--trials", "1", "--out", str(out))
        assert len(pd.read_csv(out / "trials.csv")) == 2 * 2

    @pytest.mark.django_db
    def test_record(self, tmp_path):
        run("experiment", "--config", str(self.config_file(tmp_path)), "--record", "--out", str(tmp_path / "out"))

        stored = ExperimentRun.objects.get()
        assert stored.study == "consensus"
        assert stored.master_seed == "7"
        assert stored.trials.count() == 2 * 3 * 2
        assert stored.manifest["command"] == "experiment"

    def test_needs_preset_or_study(self, tmp_path):
        config = self.config_file(tmp_path, {"trials": 3})
        assert exit_code("experiment", "--config", str(config), "--out", str(tmp_path / "out")) == CONFIG_ERROR

    def test_negative_threads(self, tmp_path):
        config = self.config_file(tmp_path)
        assert exit_code("experiment", "--config", str(config), "--threads", "0", "--out", str(tmp_path / "o")) == CONFIG_ERROR


class TestValidate:
    def test_synthetic_median(self, tmp_path):
        run("validate", "--data", "synthetic", "--kind", "median", "--hypotheses", "H1,H2", "--out", str(tmp_path))

        metrics = json.loads((tmp_path / "metrics.json").read_text())
        hypotheses = metrics["games"]["counting"]["transitions"]["1->2"]["hypotheses"]
        assert hypotheses["H1"]["median_error"] == 0.0
        assert hypotheses["H2"]["median_error"] > 0.0
        assert {"errors.csv", "rounds.csv", MANIFEST_NAME} <= {path.name for path in tmp_path.iterdir()}

    def test_csv_data(self, tmp_path):
        run("validate", "--kind", "mean", "--hypotheses", "H1,H2", "--out", str(tmp_path / "first"))
        rounds = tmp_path / "first" / "rounds.csv"

        run("validate", "--data", str(rounds), "--hypotheses", "H2", "--out", str(tmp_path / "second"))

        metrics = json.loads((tmp_path / "second" / "metrics.json").read_text())
        hypotheses = metrics["games"]["counting"]["transitions"]["1->2"]["hypotheses"]
        assert hypotheses["H2"]["median_error"] == pytest.approx(0.0, abs=1e-9)

    def test_json_tables(self, tmp_path):
        run("validate", "--hypotheses", "H1", "--format", "json", "--threads", "2", "--out", str(tmp_path))

        errors = json.loads((tmp_path / "errors.json").read_text())
        assert errors
        assert {"errors.json", "rounds.json", "metrics.json"} <= {path.name for path in tmp_path.iterdir()}

    def test_threads_fall_back_to_the_setting(self, settings, tmp_path):
        settings.MEDYN_THREADS = 0
        assert exit_code("validate", "--hypotheses", "H1", "--out", str(tmp_path)) == CONFIG_ERROR

    def test_unknown_hypothesis(self, tmp_path):
        assert exit_code("validate", "--hypotheses", "H7", "--out", str(tmp_path)) == CONFIG_ERROR

    def test_missing_data_file(self, tmp_path):
        assert exit_code("validate", "--data", str(tmp_path / "absent.csv"), "--out", str(tmp_path)) == IO_ERROR
