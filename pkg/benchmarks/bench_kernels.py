"""Compare the compiled and pure-Python kernel backends.

Runs each workload in a fresh interpreter per backend (the backend is chosen
at import time) and prints the best wall time of a few repeats.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "terms_mul": (
        "from lecycle import kernels\n"
        "p = {(i, j, k): i - j + k + 1 for i in range(6) for j in range(6) for k in range(6)}\n"
        "for _ in range(5): kernels.terms_mul(p, p)\n"
    ),
    "sparse_rank": (
        "import random\n"
        "from lecycle import kernels\n"
        "rng = random.Random(1)\n"
        "rows = [{rng.randrange(120): rng.randint(-9, 9) for _ in range(12)} for _ in range(150)]\n"
        "kernels.sparse_rank(rows)\n"
    ),
    "degen_le": (
        "from lecycle import le_numbers, parse_polynomial\n"
        "le_numbers(parse_polynomial('y^2 - x^7 - t*x^4', ['t', 'x', 'y']))\n"
    ),
    "fmcone_le": (
        "from lecycle import le_numbers, parse_polynomial\n"
        "f = parse_polynomial('y^2 - x^3 - (u^2 + v^2 + w^2)*x^2', ['u', 'v', 'w', 'x', 'y'])\n"
        "le_numbers(f)\n"
    ),
}

TIMER = (
    "import time\n"
    "from lecycle import kernels\n"
    "t0 = time.perf_counter()\n"
    "exec(compile({body!r}, 'workload', 'exec'))\n"
    "print(kernels.BACKEND, time.perf_counter() - t0)\n"
)


def run_once(body, pure):
    env = dict(os.environ)
    env.pop("LECYCLE_PURE_PYTHON", None)
    if pure:
        env["LECYCLE_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", TIMER.format(body=body)],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.split()
    return out[0], float(out[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = []
    for name, body in WORKLOADS.items():
        best = {}
        for pure in (False, True):
            times = [run_once(body, pure) for _ in range(args.repeat)]
            backend = times[0][0]
            best[backend] = min(t for _, t in times)
        rows.append((name, best.get("cython"), best["python"]))
    if args.json:
        print(json.dumps([{"workload": n, "cython": c, "python": p} for n, c, p in rows], indent=2))
        return
    print(f"{'workload':<12} {'cython [s]':>11} {'python [s]':>11} {'speedup':>8}")
    for name, c, p in rows:
        if c is None:
            print(f"{name:<12} {'n/a':>11} {p:>11.4f} {'':>8}")
        else:
            print(f"{name:<12} {c:>11.4f} {p:>11.4f} {p / c:>7.2f}x")


if __name__ == "__main__":
    main()
