"""The on-disk cache and the command-line front end.

Tables computed once are stored as JSON and revalidated when loaded.
"""

import subprocess
import sys
import tempfile

from cforge.cache import Cache, clear_memo, get_chartab
from cforge.zoo import make_group

with tempfile.TemporaryDirectory() as d:
    cache = Cache(d)
    get_chartab(make_group({"family": "Alt", "n": 6}), cache)
    print("stored entries:", sorted(p.name[:12] for p in cache.dir.glob("*.json")))
    clear_memo()
    ct = get_chartab(make_group({"family": "Alt", "n": 6}), Cache(d))
    print("reloaded A6 table, degrees", ct.degrees)

    cmd = [sys.executable, "-m", "cforge", "ah", "--group", '{"family":"PSL","d":2,"q":7}', "--cache-dir", d, "--no-timing"]
    out = subprocess.run(cmd, capture_output=True, text=True)
    print("cforge ah exit", out.returncode, "|", out.stderr.strip())
