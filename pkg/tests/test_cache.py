import json
import logging

import pytest

from treeenergy.cache import CACHE_ENV, EnergyCache, default_cache_dir
from treeenergy.experiments import EnergyEngine
from treeenergy.spectral import EnergyResult, Method
from treeenergy.trees import bn_tree, build_tstar, canonical_code

PARAMS = {"eig_tol": 1e-10, "root_tol": 1e-12}


@pytest.fixture
def cache(tmp_path):
    return EnergyCache(tmp_path / "c")


class TestEnergyCache:
    def test_miss_then_hit(self, cache):
        code = canonical_code(bn_tree(1))
        assert cache.get(code, Method.DENSE, PARAMS) is None
        cache.put(code, Method.DENSE, PARAMS, EnergyResult(10.1, Method.DENSE, 1e-9))
        got = cache.get(code, Method.DENSE, PARAMS)
        assert got == EnergyResult(10.1, Method.DENSE, 1e-9)
        assert cache.stats() == {"hits": 1, "misses": 1, "stale": 0, "corrupt": 0}

    def test_key_includes_method_and_params(self, cache):
        code = canonical_code(bn_tree(0))
        cache.put(code, Method.DENSE, PARAMS, EnergyResult(3.4, Method.DENSE, 0.0))
        assert cache.get(code, Method.POLYNOMIAL, PARAMS) is None
        assert cache.get(code, Method.DENSE, {**PARAMS, "eig_tol": 1e-8}) is None

    def test_version_bump_invalidates(self, tmp_path):
        code = canonical_code(bn_tree(0))
        EnergyCache(tmp_path, "v1").put(code, Method.DENSE, PARAMS, EnergyResult(1.0, Method.DENSE, 0.0))
        newer = EnergyCache(tmp_path, "v2")
        assert newer.get(code, Method.DENSE, PARAMS) is None
        assert newer.stale == 1

    def test_corrupt_entry_warns_and_misses(self, cache, caplog):
        code = canonical_code(bn_tree(0))
        cache.put(code, Method.DENSE, PARAMS, EnergyResult(1.0, Method.DENSE, 0.0))
        (entry,) = list(cache.directory.rglob("*.json"))
        entry.write_text("{not json")
        with caplog.at_level(logging.WARNING):
            assert cache.get(code, Method.DENSE, PARAMS) is None
        assert cache.corrupt == 1
        assert "corrupt" in caplog.text

    def test_mismatched_entry_is_corrupt(self, cache):
        code = canonical_code(bn_tree(0))
        cache.put(code, Method.DENSE, PARAMS, EnergyResult(1.0, Method.DENSE, 0.0))
        (entry,) = list(cache.directory.rglob("*.json"))
        data = json.loads(entry.read_text())
        data["code"] = "()"
        entry.write_text(json.dumps(data))
        assert cache.get(code, Method.DENSE, PARAMS) is None and cache.corrupt == 1

    def test_no_temp_files_left(self, cache):
        cache.put("(())", Method.DENSE, PARAMS, EnergyResult(2.0, Method.DENSE, 0.0))
        assert not list(cache.directory.rglob("*.tmp"))

    def test_default_dir_env(self, monkeypatch, tmp_path):
        monkeypatch.setenv(CACHE_ENV, str(tmp_path))
        assert default_cache_dir() == tmp_path
        monkeypatch.delenv(CACHE_ENV)
        monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "x"))
        assert default_cache_dir() == tmp_path / "x" / "treeenergy"


class TestEngineWithCache:
    def test_second_run_all_hits(self, cache):
        trees = [bn_tree(k) for k in range(5)]
        first = EnergyEngine(cache=cache).energies(trees)
        assert cache.misses == 5 and cache.hits == 0
        second = EnergyEngine(cache=cache).energies(trees)
        assert cache.hits == 5
        assert first == second

    def test_transparency(self, cache):
        trees = [build_tstar(n, 3) for n in range(1, 40)]
        with_cache = EnergyEngine(cache=cache).energies(trees)
        with_cache_again = EnergyEngine(cache=cache).energies(trees)
        without = EnergyEngine().energies(trees)
        assert with_cache == with_cache_again == without

    def test_relabelled_tree_hits(self, cache):
        t = bn_tree(2)
        eng = EnergyEngine(cache=cache)
        a = eng.energy(t)
        b = eng.energy(t.relabel(list(range(t.n))[::-1]))
        assert a == b and cache.hits == 1

    def test_workers_match_serial(self):
        trees = [build_tstar(n, 2) for n in range(1, 60)]
        assert EnergyEngine(workers=2).energies(trees) == EnergyEngine().energies(trees)
