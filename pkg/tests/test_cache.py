import json
import logging
import multiprocessing as mp

from dt4vertex.cache import CacheEntry, WeightCache, compute_payload
from dt4vertex.partitions import enumerate_partitions, key_str, partitions_up_to
from dt4vertex.verifier import canonical_weight


def _fill(path, sizes):
    cache = WeightCache(path)
    for n in sizes:
        for pi in enumerate_partitions(3, n):
            cache.lookup(pi)


def test_cold_then_warm(tmp_path, box):
    path = tmp_path / "cache.jsonl"
    cold = WeightCache(path)
    entry = cold.lookup(box)
    assert cold.misses == 1 and cold.hits == 0
    assert entry.payload["omega"] == "1" and entry.payload["omega_c"] == "1"
    assert len(path.read_text().splitlines()) == 1

    warm = WeightCache(path)
    again = warm.lookup(box)
    assert warm.hits == 1 and warm.misses == 0
    assert again.payload == compute_payload(box)
    assert warm.weight(box) == canonical_weight(box)


def test_corrupt_lines_are_skipped(tmp_path, box, caplog):
    path = tmp_path / "cache.jsonl"
    WeightCache(path).lookup(box)
    with path.open("a") as fh:
        fh.write("{not json\n")
        fh.write(json.dumps({"key": "x", "payload": {"w": "garbage"}, "engine_version": "0.1.0"}) + "\n")
    with caplog.at_level(logging.WARNING):
        cache = WeightCache(path)
    assert "corrupt" in caplog.text
    assert list(cache.entries) == [key_str(box)]


def test_conflicting_entries_keep_first(tmp_path, box, example_pi, caplog):
    path = tmp_path / "cache.jsonl"
    good = CacheEntry(key_str(box), compute_payload(box))
    bad = CacheEntry(key_str(box), compute_payload(example_pi))
    path.write_text(good.to_line() + "\n" + bad.to_line() + "\n")
    with caplog.at_level(logging.WARNING):
        cache = WeightCache(path)
    assert "conflicting" in caplog.text
    assert cache.lookup(box).payload == good.payload


def test_other_engine_versions_ignored(tmp_path, box):
    path = tmp_path / "cache.jsonl"
    path.write_text(CacheEntry(key_str(box), {"w": {"scalar": "5", "factors": []}}, "0.0.1").to_line() + "\n")
    cache = WeightCache(path)
    assert not cache.entries
    assert cache.weight(box) == canonical_weight(box)


def test_concurrent_writers(tmp_path):
    path = tmp_path / "cache.jsonl"
    ctx = mp.get_context("fork")
    procs = [ctx.Process(target=_fill, args=(path, range(0, 5))) for _ in range(2)]
    for p in procs:
        p.start()
    for p in procs:
        p.join()
        assert p.exitcode == 0
    lines = path.read_text().splitlines()
    seen = {}
    for line in lines:
        rec = json.loads(line)
        assert seen.setdefault(rec["key"], rec["payload"]) == rec["payload"]
    assert set(seen) == {key_str(pi) for pi in partitions_up_to(3, 4)}
    merged = WeightCache(path)
    assert len(merged.entries) == len(seen)


def test_from_env(tmp_path, monkeypatch):
    monkeypatch.delenv("DT4_CACHE", raising=False)
    assert WeightCache.from_env() is None
    monkeypatch.setenv("DT4_CACHE", str(tmp_path / "c.jsonl"))
    assert WeightCache.from_env().path == tmp_path / "c.jsonl"
