#!/usr/bin/env python3
"""Prepends the Apache-2.0 header to C++ and CMake sources that lack it."""

import pathlib
import sys

HEADER_LINES = [
    "Copyright 2026 The cgrx Authors",
    "",
    'Licensed under the Apache License, Version 2.0 (the "License");',
    "you may not use this file except in compliance with the License.",
    "You may obtain a copy of the License at",
    "",
    "    http://www.apache.org/licenses/LICENSE-2.0",
    "",
    "Unless required by applicable law or agreed to in writing, software",
    'distributed under the License is distributed on an "AS IS" BASIS,',
    "WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.",
    "See the License for the specific language governing permissions and",
    "limitations under the License.",
]

CPP_HEADER = "/*\n" + "".join(f"   {l}\n" if l else "\n" for l in HEADER_LINES) + "*/\n\n"
HASH_HEADER = "".join(f"# {l}\n" if l else "#\n" for l in HEADER_LINES) + "\n"

DIRS = ["core", "tools", "tests", "benchmarks", "cmake", "scripts"]
CPP_SUFFIXES = {".cpp", ".hpp", ".h", ".cc"}


def header_for(path: pathlib.Path):
    if path.suffix in CPP_SUFFIXES:
        return CPP_HEADER
    if path.name == "CMakeLists.txt" or path.name.endswith((".cmake", ".cmake.in")):
        return HASH_HEADER
    if path.suffix == ".py":
        return HASH_HEADER
    return None


def main(root: pathlib.Path) -> int:
    files = [root / "CMakeLists.txt"]
    for d in DIRS:
        files += sorted(p for p in (root / d).rglob("*") if p.is_file())
    changed = 0
    for path in files:
        header = header_for(path)
        if header is None:
            continue
        text = path.read_text()
        if "Licensed under the Apache License" in text[:1200]:
            continue
        if text.startswith("#!"):
            shebang, _, rest = text.partition("\n")
            text = shebang + "\n" + header + rest
        else:
            text = header + text
        path.write_text(text)
        changed += 1
    print(f"{changed} files updated")
    return 0


if __name__ == "__main__":
    sys.exit(main(pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".")))
