"""Drive the script layer from Python instead of the command line.

`run_script` takes script text plus flags and returns the same report
dict the `extlab` executable prints; handy inside notebooks or tests.
"""

import json

from extlab.script import RunFlags, parse_script, run_script

SOURCE = """
# Everything after a hash is a comment.
ring R2 = GF(101)[x,y] / (x^2, y^2);
module C = coker R2 [[x]];
let S = syzygy(k, 1);
scan tor(S, C, 1..6);
check symmetry(C, S, 8);
betti k, 4;
"""

# The parse tree is available separately for tooling.
script = parse_script(SOURCE)
print("statement kinds:", [s.kind for s in script.statements])

report = run_script(script, RunFlags(seed=1, window=8))
print("exit code:", report["exit_code"])
for entry in report["statements"]:
    print(f"  line {entry['line']:>2} {entry['kind']:<6} {entry['status']}")

# Reports are plain dicts; serialize them however suits the pipeline.
scan = next(e for e in report["statements"] if e["kind"] == "scan")
print("scan result:", json.dumps(scan["result"]["scan"]["dims"]))
