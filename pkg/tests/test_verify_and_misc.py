import json
import threading
from math import comb

from jacring.cache import ResultCache, make_key
from jacring.hilbert import hypersurface_dim_b, milnor_dims, series_mul
from jacring.linalg import modular_rank_probe
from jacring.ring import ideal_piece
from jacring.specfile import parse_specfile, preset, random_specfile
from jacring.verify import run_verify


def test_milnor_series_known_values():
    assert milnor_dims(3, 4, 8) == [1, 4, 10, 16, 19, 16, 10, 4, 1]
    assert milnor_dims(4, 5, 5)[5] == 101
    assert series_mul([1, 1], [1, 1], 2) == [1, 2, 1]


def test_hypersurface_oracle_degree_zero_piece():
    # B_0(l) is P^l modulo multiples of F
    assert hypersurface_dim_b(2, 4, 0, 3) == comb(5, 2)
    assert hypersurface_dim_b(2, 4, 0, 5) == comb(7, 2) - comb(3, 2)
    assert hypersurface_dim_b(2, 4, 0, -1) == 0
    assert hypersurface_dim_b(2, 4, -1, 3) == 0


def test_modular_probe_on_ideal_piece():
    spec = preset("fermat-quartic").to_ringspec()
    ip = ideal_piece(spec, 1, 0)
    out = modular_rank_probe(ip.span_matrix, trials=2, seed=6)
    assert out["rank"] == 16 and out["agree"]


def test_run_verify_smooth_presets():
    for name in ["elliptic-line", "conic-two-lines"]:
        doc = run_verify(preset(name).to_ringspec(), seed=5)
        assert doc["input_ok"] and doc["violations"] == 0
        names = {c["name"] for c in doc["checks"]}
        assert {"euler-relation", "duality-sweep", "torelli-surjectivity",
                "cross-characteristic"} <= names


def test_run_verify_prime_field_lane():
    from jacring.field import Field

    sf = preset("conic-two-lines", field=Field.prime(1000003))
    doc = run_verify(sf.to_ringspec(), seed=2)
    assert doc["input_ok"] and doc["violations"] == 0
    cc = next(c for c in doc["checks"] if c["name"] == "cross-characteristic")
    assert "skipped" in cc


def test_run_verify_random_complete_intersection():
    sf = random_specfile(3, n=3, degrees=[2, 2], divisor_degrees=[1])
    doc = run_verify(sf.to_ringspec(), seed=3)
    assert doc["input_ok"] and doc["violations"] == 0


def test_run_verify_rejects_singular_input():
    doc = run_verify(preset("singular-cubic").to_ringspec())
    assert not doc["input_ok"] and not doc["checks"]


def test_run_verify_assume_smooth_override():
    sf = preset("singular-cubic")
    sf.assume_smooth = True
    doc = run_verify(sf.to_ringspec(), seed=1)
    assert doc["input_ok"]  # battery runs; violations are possible and honest


def test_random_specfile_deterministic_and_smooth():
    a = random_specfile(5, n=2, degrees=[2], divisor_degrees=[1, 1])
    b = random_specfile(5, n=2, degrees=[2], divisor_degrees=[1, 1])
    assert a.canonical_text() == b.canonical_text()
    assert parse_specfile(a.canonical_text()).content_hash() == a.content_hash()


def test_cache_roundtrip_and_concurrent_writers(tmp_path):
    cache = ResultCache(str(tmp_path / "c"))
    key = make_key({"spec": "x", "command": "dim"})
    assert cache.get(key) is None
    payload = json.dumps({"exit": 0, "body": "hello\n"})

    threads = [threading.Thread(target=cache.put, args=(key, payload))
               for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert json.loads(cache.get(key))["body"] == "hello\n"
    assert make_key({"spec": "x", "command": "dim"}) == key
    assert make_key({"spec": "y", "command": "dim"}) != key
