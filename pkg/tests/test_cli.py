import json
import logging

import pytest

from cphilab import cache
from cphilab.cli import main
from cphilab.frobenius import SeriesSpec, cphi_series, partition_series
from cphilab.qseries import QSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "cphi:2", "--terms", "5")
    assert code == 0 and out.split() == ["1", "4", "9", "20", "42"]


def test_expand_json_schema(capsys):
    code, out, _ = run(capsys, "expand", "partition", "--terms", "6", "--format", "json", "--mod", "2")
    payload = json.loads(out)
    assert code == 0
    assert set(payload) == {"spec", "offset", "trunc", "modulus", "coeffs"}
    assert payload["coeffs"] == ["1", "1", "0", "1", "1", "1"]
    assert payload["modulus"] == 2


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "cphi:2;A=5;B=3;M=5", "--limit", "200")[0] == 0
    code, out, _ = run(capsys, "verify", "partition;A=5;B=1;M=5", "--limit", "20")
    assert code == 1 and "counterexample" in out
    code, out, _ = run(capsys, "verify", "partition;A=5;B=4;M=5", "--limit", "20", "--format", "json")
    assert json.loads(out)["status"] == "holds"


def test_errors_exit_two(capsys):
    assert run(capsys, "verify", "nonsense;A=5;B=4;M=5")[0] == 2
    assert run(capsys, "expand", "cphi:x")[0] == 2
    assert run(capsys, "bound", "--r", "0", "--t", "1", "--general")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "partition", "--ell-max", "11", "--limit", "200", "--format", "json")
    assert code == 0
    assert json.loads(out)["candidates"] == [[5, 4], [7, 5], [11, 6]]


def test_sturm(capsys):
    assert run(capsys, "sturm", "--weight", "12", "--level", "576")[1].strip() == "221184"
    assert run(capsys, "sturm", "--weight", "12", "--level", "1", "--r", "0", "--t", "2")[1].strip() == "3"


def test_theta_and_eta(capsys):
    code, out, _ = run(capsys, "theta", "--k", "3", "--terms", "5", "--format", "json")
    payload = json.loads(out)
    assert payload["series"]["coeffs"] == ["1", "6", "0", "6", "6"]
    assert payload["meta"]["level"] == 3
    code, out, _ = run(capsys, "eta", "1^24", "--terms", "4")
    assert code == 0 and "offset 1: 1 -24 252" in out


def test_parity_and_bound(capsys):
    code, out, _ = run(capsys, "parity", "--r", "1", "--t", "2", "--limit", "50", "--format", "json")
    assert json.loads(out)["smallest_odd"] == 1
    assert run(capsys, "bound", "--r", "1", "--t", "3")[1].strip() == str(2**19 * 3**12 - 1)
    general = run(capsys, "bound", "--r", "1", "--t", "3", "--general", "--level", "1728")[1]
    assert general.strip() == str(2**19 * 3**12 - 1)


def test_factorcheck(capsys):
    code, out, _ = run(capsys, "factorcheck", "--t", "2", "--terms", "600")
    assert code == 0 and "pass" in out


# cache


def test_cache_roundtrip(tmp_path, capsys):
    spec = SeriesSpec("partition")
    first = cache.cached_series(spec, 1000, cache_dir=tmp_path)
    path = cache.entry_path(tmp_path, spec, None)
    assert path.exists()
    again, entry = cache.read_entry(path)
    assert again == first == partition_series(1000)
    assert entry.trunc == 1000


def test_cache_extends_and_serves_prefixes(tmp_path):
    spec = SeriesSpec("cphi", 3)
    cache.cached_series(spec, 500, cache_dir=tmp_path)
    longer = cache.cached_series(spec, 1000, cache_dir=tmp_path)
    assert longer == cphi_series(3, 1000)
    assert cache.read_entry(cache.entry_path(tmp_path, spec, None))[0].trunc == 1000
    assert cache.cached_series(spec, 300, cache_dir=tmp_path) == cphi_series(3, 300)


def test_corrupt_entry_is_recomputed(tmp_path, caplog):
    spec = SeriesSpec("partition")
    cache.cached_series(spec, 200, cache_dir=tmp_path)
    path = cache.entry_path(tmp_path, spec, None)
    path.write_text(path.read_text().replace("\n5 7\n", "\n5 8\n"))
    with caplog.at_level(logging.WARNING):
        s = cache.cached_series(spec, 200, cache_dir=tmp_path)
    assert s == partition_series(200)
    assert "digest mismatch" in caplog.text
    assert cache.read_entry(path)[0] == s


def test_truncated_entry_with_valid_digest_is_recomputed(tmp_path, caplog):
    spec = SeriesSpec("partition")
    cache.cached_series(spec, 200, cache_dir=tmp_path)
    path = cache.entry_path(tmp_path, spec, None)
    data = "\n".join(path.read_text().splitlines()[:50]) + "\n"
    path.write_text(data)
    path.with_suffix(".qseries.sha256").write_text(cache._digest(data.encode()))
    with caplog.at_level(logging.WARNING):
        assert cache.cached_series(spec, 200, cache_dir=tmp_path) == partition_series(200)
    assert "promises" in caplog.text


def test_wrong_values_with_valid_digest_fail_spot_check(tmp_path, caplog):
    spec = SeriesSpec("partition")
    bad = partition_series(100) + QSeries.one(100)
    cache.write_entry(cache.entry_path(tmp_path, spec, None), bad, spec)
    with caplog.at_level(logging.WARNING):
        assert cache.cached_series(spec, 100, cache_dir=tmp_path) == partition_series(100)
    assert "spot check" in caplog.text


def test_env_var_sets_default_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cache.CACHE_ENV, str(tmp_path))
    assert run(capsys, "expand", "cphi:2", "--terms", "30")[0] == 0
    assert cache.entry_path(tmp_path, SeriesSpec("cphi", 2), None).exists()


def test_modular_entries_are_separate(tmp_path):
    spec = SeriesSpec("partition")
    a = cache.cached_series(spec, 50, modulus=2, cache_dir=tmp_path)
    b = cache.cached_series(spec, 50, cache_dir=tmp_path)
    assert a.modulus == 2 and b.modulus is None
    assert cache.entry_path(tmp_path, spec, 2) != cache.entry_path(tmp_path, spec, None)
