import json
import logging

import pytest

from cforge.cache import Cache, CacheEntry, cache_key, cache_roundtrip, clear_memo, get_chartab, get_classes
from cforge.zoo import make_group

PSL27 = {"family": "PSL", "d": 2, "q": 7}


@pytest.fixture(autouse=True)
def fresh_memo():
    clear_memo()
    yield
    clear_memo()


def test_key_stable_under_formatting():
    a = cache_key({"family": "PSL", "d": 2, "q": 7}, "classes")
    b = cache_key(json.loads('{ "q":7,  "family" : "PSL", "d":2 }'), "classes")
    assert a == b
    assert a != cache_key(PSL27, "chartab")
    with pytest.raises(ValueError):
        cache_key(PSL27, "bogus")


def test_roundtrip(tmp_path):
    c = Cache(tmp_path)
    e = CacheEntry(cache_key(PSL27, "classes"), "classes", PSL27, {"x": [1, 2]})
    back = cache_roundtrip(c, e)
    assert back.payload == e.payload and back.spec == PSL27
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".tmp-")]


def test_tables_reload_from_disk(tmp_path):
    m = make_group(PSL27)
    c = Cache(tmp_path)
    ct = get_chartab(m, c)
    assert len(list(tmp_path.glob("*.json"))) == 2
    clear_memo()
    ct2 = get_chartab(m, Cache(tmp_path))
    assert ct2.values == ct.values
    assert ct2.classes.sizes == ct.classes.sizes


@pytest.mark.parametrize("kind", ["classes", "chartab"])
def test_corrupt_entry_recomputed(tmp_path, caplog, kind):
    m = make_group(PSL27)
    get_chartab(m, Cache(tmp_path))
    path = Cache(tmp_path).path(cache_key(PSL27, kind))
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    clear_memo()
    with caplog.at_level(logging.WARNING):
        ct = get_chartab(m, Cache(tmp_path))
    assert any("discarding" in r.message or "failed validation" in r.message for r in caplog.records)
    assert ct.check_orthogonality()
    # rewritten with a valid entry
    json.loads(path.read_text())


def test_wrong_but_parseable_table_rejected(tmp_path, caplog):
    m = make_group(PSL27)
    c = Cache(tmp_path)
    t = get_classes(m, c)
    path = c.path(cache_key(PSL27, "classes"))
    data = json.loads(path.read_text())
    data["payload"]["centralizer_orders"][1] = str(2 * int(data["payload"]["centralizer_orders"][1]))
    path.write_text(json.dumps(data))
    clear_memo()
    with caplog.at_level(logging.WARNING):
        t2 = get_classes(m, Cache(tmp_path))
    assert t2.sizes == t.sizes
    assert caplog.records


def test_cache_keys_reported(tmp_path):
    from cforge import verify as V

    c = Cache(tmp_path)
    r = V.verify_arad_herzog(PSL27, c)
    assert cache_key(PSL27, "classes") in r.cache_keys
