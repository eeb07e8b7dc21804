#!/usr/bin/env python3
"""Writes the small Persuasive-Essays-style fixtures under data/pe/.

Offsets in the .ann files are codepoint offsets computed from the essay
text, so the fixtures stay consistent by construction.
"""

import os

OUT = "data/pe"

ESSAYS = {
    "essay001": {
        "text": ("Should schools teach cooperation?\n\n"
                 "Cooperation should sit at the heart of primary education. "
                 "Some argue that competition prepares children for adult life. "
                 "Team projects teach children to share responsibility. "
                 "Pupils who practice group work later resolve conflicts more calmly. "
                 "Competitive grading pushes weaker pupils to give up early.\n"),
        "components": [
            ("T1", "MajorClaim",
             "Cooperation should sit at the heart of primary education"),
            ("T2", "Claim", "competition prepares children for adult life"),
            ("T3", "Claim", "Team projects teach children to share responsibility"),
            ("T4", "Premise",
             "Pupils who practice group work later resolve conflicts more calmly"),
            ("T5", "Premise",
             "Competitive grading pushes weaker pupils to give up early"),
        ],
        "stances": [("A1", "T2", "Against"), ("A2", "T3", "For")],
        "relations": [("R1", "supports", "T4", "T3"),
                      ("R2", "attacks", "T5", "T2")],
    },
    "essay002": {
        "text": ("Night buses for the suburbs\n\n"
                 "The city should run night buses to every suburb. "
                 "Late shifts end long after the regular lines stop. "
                 "Few passengers ride after midnight on weekdays. "
                 "Counting only weekdays hides the packed weekend runs. "
                 "Ticket data from the pilot year backs this up.\n"),
        "components": [
            ("T1", "MajorClaim",
             "The city should run night buses to every suburb"),
            ("T2", "Claim", "Late shifts end long after the regular lines stop"),
            ("T3", "Premise", "Few passengers ride after midnight on weekdays"),
            ("T4", "Premise",
             "Counting only weekdays hides the packed weekend runs"),
            ("T5", "Premise", "Ticket data from the pilot year backs this up"),
        ],
        "stances": [("A1", "T2", "For")],
        "relations": [("R1", "attacks", "T3", "T2"),
                      ("R2", "attacks", "T4", "T3"),
                      ("R3", "supports", "T5", "T4")],
    },
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for essay_id, spec in ESSAYS.items():
        text = spec["text"]
        with open(os.path.join(OUT, essay_id + ".txt"), "w",
                  encoding="utf-8") as f:
            f.write(text)
        lines = []
        for comp_id, kind, surface in spec["components"]:
            start = text.find(surface)
            assert start >= 0, (essay_id, surface)
            end = start + len(surface)
            lines.append(f"{comp_id}\t{kind} {start} {end}\t{surface}")
        for ann_id, target, value in spec["stances"]:
            lines.append(f"{ann_id}\tStance {target} {value}")
        for rel_id, kind, src, trg in spec["relations"]:
            lines.append(f"{rel_id}\t{kind} Arg1:{src} Arg2:{trg}\t")
        with open(os.path.join(OUT, essay_id + ".ann"), "w",
                  encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")
        print(f"wrote {essay_id}: {len(spec['components'])} components")


if __name__ == "__main__":
    main()
