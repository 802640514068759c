#!/usr/bin/env python3
"""Prepend the Apache 2.0 header to every C++ source file that lacks it."""

import argparse
import pathlib

HEADER = """\
// {path}

// Copyright 2026  amfuse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

"""

MARKER = "// Copyright 2026  amfuse authors"
DIRS = ("src", "include", "tools", "tests")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("root", nargs="?", default=pathlib.Path(__file__).parent.parent,
                        type=pathlib.Path)
    args = parser.parse_args()
    changed = 0
    for top in DIRS:
        for path in sorted((args.root / top).rglob("*")):
            if path.suffix not in (".h", ".cc") or not path.is_file():
                continue
            text = path.read_text(encoding="utf-8")
            if MARKER in text[:300]:
                continue
            label = f"{path.parent.name}/{path.name}"
            path.write_text(HEADER.format(path=label) + text, encoding="utf-8")
            changed += 1
    print(f"added headers to {changed} files")


if __name__ == "__main__":
    main()
