#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# Copyright 2026 The efsmt authors
#
# Scripted stand-in for an SMT-LIB 2 solver on stdin/stdout.
#   fake_smt.py unsat | unknown | crash | garbage | hang
#   fake_smt.py sat NAME=VALUE ...     (VALUE like 17/2 or -3, sent as (/ 17 2), (- 3))
# With FAKE_SMT_LOG set, every command received is appended to that file.

import os
import sys
import time

mode = sys.argv[1] if len(sys.argv) > 1 else "unsat"
model = [a.split("=", 1) for a in sys.argv[2:]]
log = open(os.environ["FAKE_SMT_LOG"], "a") if os.environ.get("FAKE_SMT_LOG") else None


def smt(value):
    if value in ("true", "false"):
        return value
    neg = value.startswith("-")
    value = value.lstrip("-")
    if "/" in value:
        p, q = value.split("/")
        value = "(/ %s %s)" % (p, q)
    return "(- %s)" % value if neg else value


def reply(text):
    sys.stdout.write(text + "\n")
    sys.stdout.flush()


buf = ""
for line in sys.stdin:
    buf += line
    if buf.count("(") != buf.count(")"):
        continue
    cmd = buf.strip()
    buf = ""
    if not cmd:
        continue
    if log:
        log.write(cmd + "\n")
        log.flush()
    if cmd.startswith("(check-sat"):
        if mode == "crash":
            sys.exit(3)
        if mode == "hang":
            time.sleep(60)
        if mode == "garbage":
            reply("banana")
        elif mode == "sat":
            reply("sat")
        else:
            reply(mode)
    elif cmd.startswith("(get-value"):
        reply("(" + " ".join("(%s %s)" % (n, smt(v)) for n, v in model) + ")")
    elif cmd.startswith("(exit"):
        break
