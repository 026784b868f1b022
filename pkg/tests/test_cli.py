import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import GOLDEN
from measurekit import Measure, dirac, hat, jordan, tv_norm, variation
from measurekit.corpus import ENTRIES, example_3_8
from measurekit.serialize import dumps, function_to_dict, measure_to_dict


def run(*args, env=None, check=True):
    full_env = dict(os.environ, **(env or {}))
    result = subprocess.run([sys.executable, "-m", "measurekit", *args], capture_output=True,
                            text=True, env=full_env)
    if check:
        assert result.returncode == 0, result.stderr
    return result


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(dumps(data) if not isinstance(data, str) else data, encoding="utf-8")
        return str(path)
    return write


def test_integrate(files):
    tent = run("corpus", "export", "--id", "example_3_3", "--n", "2").stdout
    f = files("hat.json", function_to_dict(hat(0, 1)))
    assert run("integrate", files("m.json", tent), f).stdout == "2\t2\n"
    assert run("integrate", files("z.json", measure_to_dict(Measure())), f).stdout == "0\t0\n"
    assert run("integrate", files("d.json", measure_to_dict(dirac(0))), f).stdout == "1\t1\n"
    third = files("t.json", measure_to_dict(dirac(0).scale(Fraction(1, 3))))
    assert run("integrate", third, f).stdout == "1/3\t0.333333333333\n"


def test_decompose(files):
    out = json.loads(run("decompose", files("m.json", measure_to_dict(dirac(0) - dirac(1)))).stdout)
    assert out["positive"] == measure_to_dict(dirac(0))
    assert out["negative"] == measure_to_dict(dirac(1))
    assert out["tv_norm"]["exact"] == "2"
    out = json.loads(run("decompose", files("s.json", measure_to_dict(example_3_8(1)))).stdout)
    assert out["tv_norm"]["exact"] == "2"
    out = json.loads(run("decompose", files("z.json", measure_to_dict(Measure()))).stdout)
    assert out["variation"] == {"atoms": [], "density": []}


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.id)
def test_export_then_decompose_round_trip(entry, files):
    path = files("m.json", run("corpus", "export", "--id", entry.id, "--n", "3").stdout)
    out = json.loads(run("decompose", path).stdout)
    mu = entry.generator(3)
    pos, neg = jordan(mu)
    assert out["positive"] == measure_to_dict(pos)
    assert out["negative"] == measure_to_dict(neg)
    assert out["variation"] == measure_to_dict(variation(mu))
    assert Fraction(out["tv_norm"]["exact"]) == tv_norm(mu)


def test_distfun(files):
    tent = files("m.json", run("corpus", "export", "--id", "example_3_3", "--n", "1").stdout)
    rows = run("distfun", tent, "--from", "-1", "--to", "3", "--step", "1").stdout.splitlines()
    assert rows == ["x,F", "-1,0", "0,0", "1,2", "2,0", "3,0"]
    saw = files("s.json", run("corpus", "export", "--id", "example_3_8", "--n", "2").stdout)
    out = run("distfun", saw, "--from", "-1/4", "--to", "1/4", "--step", "1/64", "--exact").stdout
    values = [Fraction(line.split(",")[2]) for line in out.splitlines()[1:]]
    assert len(values) == 33 and max(abs(v) for v in values) == Fraction(1, 4)


def test_distfun_centres(files):
    m = files("d.json", measure_to_dict(dirac(0)))
    assert run("distfun", m, "--centre", "-inf", "--from", "0", "--to", "0").stdout == "x,F\n0,1\n"
    assert run("distfun", m, "--centre", "+inf", "--from", "-1", "--to", "-1").stdout == "x,F\n-1,-1\n"


def test_bad_inputs_exit_nonzero(files):
    bad = files("bad.json", '{"atoms": [\n  {"x": "1", "w": }\n]}')
    r = run("decompose", bad, check=False)
    assert r.returncode != 0 and "line 2 column" in r.stderr
    m = files("m.json", measure_to_dict(dirac(0)))
    r = run("distfun", m, "--centre", "middle", check=False)
    assert r.returncode != 0 and "invalid centre" in r.stderr
    r = run("distfun", m, "--step", "0", check=False)
    assert r.returncode != 0
    r = run("classify", "--corpus", "example_7_7", check=False)
    assert r.returncode == 1 and "unknown corpus id" in r.stderr
    spec = files("spec.json", {"atoms": [{"x": "1/n +", "w": "1"}]})
    r = run("classify", spec, check=False)
    assert r.returncode == 1 and "$.atoms[0].x" in r.stderr and "column" in r.stderr


def test_classify_spec_file(files):
    spec = files("spec.json", {"label": "approach zero", "atoms": [{"x": "1/n", "w": "1"}],
                               "limit": {"atoms": [{"x": "0", "w": "1"}]}})
    report = json.loads(run("classify", spec).stdout)
    assert report["sequence"] == "approach zero"
    assert report["checks"]["vague"]["status"] == "holds"
    assert report["rejected_points"] == ["0"]
    r = run("classify", files("nolimit.json", {"atoms": [{"x": "n", "w": "1"}]}), check=False)
    assert r.returncode == 1 and "--limit" in r.stderr


def test_classify_flags_reach_the_config():
    out = run("classify", "--corpus", "example_3_4", "--schedule", "1-12", "--tail-window", "3",
              "--tolerance", "1/100", "--family-depth", "1", "--family-extent", "1",
              "--centre", "+inf").stdout
    config = json.loads(out)["config"]
    assert config["schedule"]["indices"] == list(range(1, 13))
    assert config["schedule"]["tail_window"] == 3
    assert config["schedule"]["tolerance"] == "1/100"
    assert config["family"] == {"extent": "1", "depth": 1}
    assert config["centre"] == "+inf"


def test_classify_exits_zero_on_failing_verdicts():
    report = json.loads(run("classify", "--corpus", "example_2_1").stdout)
    row1 = report["table1"][0]
    assert (row1["A"]["status"], row1["B"]["status"]) == ("fails", "fails")


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.id)
def test_classify_matches_golden(entry):
    out = run("classify", "--corpus", entry.id).stdout
    assert out == (GOLDEN / f"classify_{entry.id}.json").read_text(encoding="utf-8")


def test_reports_identical_across_thread_counts():
    one = run("classify", "--corpus", "example_3_4", env={"MEASUREKIT_THREADS": "1"}).stdout
    many = run("classify", "--corpus", "example_3_4", env={"MEASUREKIT_THREADS": "8"}).stdout
    assert one == many


def test_corpus_list_and_facts():
    listing = json.loads(run("corpus", "list").stdout)
    assert [e["id"] for e in listing] == [e.id for e in ENTRIES]
    facts = run("corpus", "facts").stdout
    assert facts == (GOLDEN / "corpus_facts.csv").read_text(encoding="utf-8")
    assert facts.splitlines()[0] == "id,fact,n,value,expected,match"
    assert all(line.endswith(",yes") for line in facts.splitlines()[1:])
