import json
import subprocess
import sys

import pytest

from cforge.cli import main

PSL27 = '{"family":"PSL","d":2,"q":7}'


def run(*args, env=None):
    p = subprocess.run([sys.executable, "-m", "cforge", *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def test_classes_json():
    code, out, err = run("classes", "--group", '{"family":"Alt","n":5}')
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 5
    assert "5 classes" in err


@pytest.mark.parametrize("argv,code", [
    (["ah", "--group", PSL27], 0),
    (["ah", "--group", '{"family":"Alt","n":4}'], 1),
    (["ah", "--group", '{"family":"Nope"}'], 2),
    (["classes"], 2),
    (["product", "--group", PSL27, "--classes", "1,99"], 2),
    (["bogus"], 2),
    (["zsig", "--q", "2", "--n", "6"], 0),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_group_from_file(tmp_path, capsys):
    f = tmp_path / "g.json"
    f.write_text(PSL27)
    assert main(["product", "--group", str(f), "--classes", "1,1", "--no-timing"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["identity_holds"] is True


def test_dcoset_sp43(capsys):
    # transvection and the -1 -1 1 1 involution, located by element order and class size
    from cforge.cache import get_classes
    from cforge.zoo import make_group, special_element

    spec = {"family": "Sp", "d": 4, "q": 3}
    m = make_group(spec)
    t = get_classes(m)
    i = t.identify(special_element(m, "transvection"))
    j = t.identify(special_element(m, "involution"))
    assert main(["dcoset", "--group", json.dumps(spec), "--classes", f"{i},{j}"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 3


def test_cache_byte_identical(tmp_path):
    args = ["szep", "--group", PSL27, "--cache-dir", str(tmp_path), "--no-timing"]
    c1, cold, _ = run(*args)
    assert c1 == 0 and list(tmp_path.glob("*.json"))
    c2, warm, _ = run(*args)
    assert c2 == 0 and cold == warm
    json.loads(cold)


def test_bs_and_bsas_single_pair(capsys):
    s5 = '{"family":"Sym","n":5}'
    from cforge.cache import get_classes
    from cforge.zoo import make_group

    t = get_classes(make_group(json.loads(s5)))
    five = next(i for i in range(len(t)) if t.element_orders[i] == 5)
    assert main(["bsas", "--group", s5, "--p", "5", "--classes", f"{five},{five}"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["nonsolvable_witness"] is not None
    assert main(["bs", "--group", s5, "--p", "5", "--classes", f"{five},{five}"]) == 0
    assert json.loads(capsys.readouterr().out)["all_p"] is False
    assert main(["bs", "--group", s5, "--classes", "1,1"]) == 2


def test_demo_counterexamples_cli():
    code, out, _ = run("demo-counterexamples", "--no-timing")
    assert code == 0
    assert json.loads(out)["all_match"] is True

