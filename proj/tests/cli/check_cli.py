"""Runs the waring CLI once and checks its exit status and output.

usage: check_cli.py [--exit N] [--json KEY=VALUE]... [--contains TEXT]...
                    [--file NAME=TEXT]... -- COMMAND...

--json-from NAME reads the JSON from a scratch file instead of stdout.
--file writes TEXT (with \\n escapes) to NAME in a scratch directory; the
token @NAME in COMMAND is replaced by that path, and @out:NAME by the path
of a not yet existing scratch file. KEY may be a dotted path.
"""

import argparse
import json
import os
import subprocess
import sys
import tempfile


def lookup(doc, path):
    for part in path.split("."):
        doc = doc[int(part)] if isinstance(doc, list) else doc[part]
    return doc


def main():
    argv = sys.argv[1:]
    split = argv.index("--")
    parser = argparse.ArgumentParser()
    parser.add_argument("--exit", type=int, default=0)
    parser.add_argument("--json", action="append", default=[])
    parser.add_argument("--contains", action="append", default=[])
    parser.add_argument("--file", action="append", default=[])
    parser.add_argument("--json-from", help="read the JSON checks from this scratch file")
    args = parser.parse_args(argv[:split])
    command = argv[split + 1:]

    with tempfile.TemporaryDirectory() as scratch:
        paths = {}
        for spec in args.file:
            name, text = spec.split("=", 1)
            paths[name] = os.path.join(scratch, name)
            with open(paths[name], "w", encoding="utf-8") as f:
                f.write(text.replace("\\n", "\n"))
        for name, path in paths.items():
            command = [path if c == "@" + name else c for c in command]
        command = [os.path.join(scratch, c[len("@out:"):]) if c.startswith("@out:") else c for c in command]
        proc = subprocess.run(command, capture_output=True, text=True, cwd=scratch)
        json_text = proc.stdout
        if args.json_from:
            try:
                with open(os.path.join(scratch, args.json_from), encoding="utf-8") as f:
                    json_text = f.read()
            except OSError as e:
                json_text = ""
                print("cannot read output file:", e)

    failures = []
    if proc.returncode != args.exit:
        failures.append(f"exit status {proc.returncode}, expected {args.exit}")
    for text in args.contains:
        if text not in proc.stdout + proc.stderr:
            failures.append(f"output lacks {text!r}")
    if args.json:
        try:
            doc = json.loads(json_text)
        except json.JSONDecodeError as e:
            failures.append(f"output is not JSON: {e}")
            doc = None
        for spec in args.json if doc is not None else []:
            key, want = spec.split("=", 1)
            try:
                got = lookup(doc, key)
            except (KeyError, IndexError, TypeError):
                failures.append(f"missing key {key}")
                continue
            if got != json.loads(want):
                failures.append(f"{key} = {got!r}, expected {want}")

    if failures:
        print("command:", " ".join(command))
        print("stdout:", proc.stdout[:4000])
        print("stderr:", proc.stderr[:4000])
        for f in failures:
            print("FAIL:", f)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
