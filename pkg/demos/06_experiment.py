"""A seeded batch of trials through the harness, the same path the CLI takes.

Equivalent to
    cayleyfp experiment --n 211 --p 0.5 --trials 12 --master-seed 7 --out runs.csv

Run: python demos/06_experiment.py
"""
import io
import json

from cayleyfp import ExperimentConfig, run_experiment

buf = io.StringIO()
res = run_experiment(ExperimentConfig(n=211, p=0.5, trials=12, master_seed=7, threads=2), stream=buf)
print(buf.getvalue())
print(json.dumps({k: v for k, v in res.summary.items() if k != "config"}, indent=1))

# Same config, different pool width: same bytes.
again = io.StringIO()
run_experiment(ExperimentConfig(n=211, p=0.5, trials=12, master_seed=7, threads=1), stream=again)
print("reproducible:", again.getvalue() == buf.getvalue())
