"""Validates `adtcheck check --format json` output for every corpus program."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, corpus = sys.argv[1:4]
schema = json.load(open(schema_path))
runs = [
    ["buffer.subj"],
    ["buffer.subj", "--arg-domain", "0,1"],
    ["mutant_offbyone.subj"],
    ["mutant_fifo.subj"],
    ["mutant_dropwrite.subj"],
    ["extra/counter.subj"],
    ["extra/two_structs.subj", "--struct", "Stack"],
    ["extra/two_structs.subj", "--struct", "Queue"],
    ["inverted_rules/buffer_code.subj", "inverted_rules/buffer_protocol.subj"],
]
failed = 0
for run in runs:
    files = [f"{corpus}/{a}" if a.endswith(".subj") else a for a in run]
    proc = subprocess.run([cli, "check", *files, "--format", "json"], capture_output=True, text=True)
    if proc.returncode not in (0, 1):
        print(f"FAIL {' '.join(run)}: exit {proc.returncode}: {proc.stderr}")
        failed += 1
        continue
    try:
        jsonschema.validate(json.loads(proc.stdout), schema)
        print(f"ok   {' '.join(run)}")
    except jsonschema.ValidationError as e:
        print(f"FAIL {' '.join(run)}: {e.message}")
        failed += 1
sys.exit(1 if failed else 0)
