#!/usr/bin/env python3
"""Regenerates include/mathns/defaults.hpp from the list files in data/."""
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent
files = [
    ("kStopSymbols", "stop_symbols.txt"),
    ("kStopDefinitions", "stop_definitions.txt"),
    ("kLexicon", "lexicon.tsv"),
    ("kSuffixRules", "suffix_rules.tsv"),
]
out = [
    "#pragma once",
    "",
    "// Generated by tools/gen_defaults.py from data/; do not edit by hand.",
    "",
    "#include <string_view>",
    "",
    "namespace mathns::defaults {",
    "",
]
for name, fname in files:
    text = (root / "data" / fname).read_text(encoding="utf-8")
    assert ')mathns"' not in text
    out.append(f'inline constexpr std::string_view {name} = R"mathns({text})mathns";')
    out.append("")
out.append("}  // namespace mathns::defaults")
(root / "include" / "mathns" / "defaults.hpp").write_text("\n".join(out) + "\n", encoding="utf-8")
