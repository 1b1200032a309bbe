#!/usr/bin/env python3
"""Writes the bundled toy corpus: 30 synthetic documents over 5 topics.

Each topic owns a pool of identifiers with fixed definitions; a document
defines a random subset of its topic's pool in template sentences and
combines a few of them in formulas. Some symbols (V, R, I, n, v, x) are
shared between topics with different meanings, so the namespaces differ.
Rerun to regenerate data/toy/corpus.jsonl and data/toy/labels.tsv.
"""
import json
import pathlib
import random

TOPICS = {
    "mechanics": {
        "category": "Classical mechanics",
        "subjects": ["falling bodies", "projectile motion", "collisions", "circular motion",
                     "work and energy", "oscillations"],
        "pool": [("F", "force"), ("m", "mass"), ("a", "acceleration"), ("v", "velocity"),
                 ("p", "momentum"), ("g", "gravitational acceleration"), ("t", "time"),
                 ("x", "position"), ("W", "work"), ("k", "spring constant")],
        "formulas": ["F = m a", "p = m v", "W = F x", "v = a t", "F = - k x", "x = v t"],
    },
    "thermodynamics": {
        "category": "Thermodynamics",
        "subjects": ["ideal gases", "heat engines", "entropy", "the first law",
                     "heat capacity", "phase changes"],
        "pool": [("T", "temperature"), ("P", "pressure"), ("V", "volume"), ("S", "entropy"),
                 ("Q", "heat"), ("n", "amount of substance"), ("R", "gas constant"),
                 ("U", "internal energy"), ("C", "heat capacity"), ("\\eta", "efficiency")],
        "formulas": ["P V = n R T", "U = Q - W", "S = Q / T", "Q = C T",
                     "\\eta = 1 - T_c / T_h", "U = C T"],
    },
    "statistics": {
        "category": "Statistics",
        "subjects": ["estimation", "hypothesis testing", "sampling", "maximum likelihood",
                     "confidence intervals", "regression"],
        "pool": [("\\mu", "mean"), ("\\sigma", "standard deviation"), ("N", "sample size"),
                 ("X", "random variable"), ("\\theta", "parameter"), ("L", "likelihood"),
                 ("\\alpha", "significance level"), ("s", "sample variance"),
                 ("\\beta", "regression coefficient"), ("\\epsilon", "error")],
        "formulas": ["\\bar X = \\mu", "Z = (\\bar X - \\mu) / \\sigma", "L(\\theta)",
                     "Y = \\beta X + \\epsilon", "s^2 = \\sigma^2 / N", "P(X) = \\alpha"],
    },
    "linear_algebra": {
        "category": "Linear algebra",
        "subjects": ["eigenvalues", "matrix inversion", "vector spaces", "linear systems",
                     "orthogonal projections", "determinants"],
        "pool": [("A", "matrix"), ("\\lambda", "eigenvalue"), ("v", "eigenvector"),
                 ("I", "identity matrix"), ("n", "dimension"), ("x", "unknown vector"),
                 ("b", "vector"), ("Q", "orthogonal matrix"), ("r", "rank"), ("d", "determinant")],
        "formulas": ["A v = \\lambda v", "A x = b", "Q^T Q = I", "A A^{-1} = I", "d = \\det A",
                     "x = A^{-1} b"],
    },
    "electromagnetism": {
        "category": "Electromagnetism",
        "subjects": ["electric fields", "magnetic induction", "circuits", "capacitors",
                     "electromagnetic waves", "resistors"],
        "pool": [("E", "electric field"), ("B", "magnetic field"), ("q", "charge"), ("I", "current"),
                 ("V", "voltage"), ("R", "resistance"), ("\\epsilon_0", "permittivity"),
                 ("\\mu_0", "permeability"), ("\\Phi", "magnetic flux"), ("\\rho", "charge density")],
        "formulas": ["V = I R", "F = q E", "E = \\rho / \\epsilon_0",
                     "\\Phi = B A", "B = \\mu_0 I", "P = V I"],
    },
}

TEMPLATES = [
    "Here ${id}$ is the {df}.",
    "Let ${id}$ be the {df}.",
    "The symbol ${id}$ denotes the {df}.",
    "We write the {df} ${id}$ throughout.",
    "In this section ${id}$ stands for the {df}.",
]


def make_doc(rng, topic, spec, index):
    chosen = rng.sample(spec["pool"], 6)
    sentences = [f"This article studies {spec['subjects'][index]} in {spec['category'].lower()}."]
    for ident, definition in chosen:
        sentences.append(rng.choice(TEMPLATES).format(id=ident, df=definition))
    for formula in rng.sample(spec["formulas"], 2):
        sentences.append(f"It follows that ${formula}$.")
    return {
        "doc_id": f"{topic}_{index + 1:02d}",
        "title": f"{spec['category']}: {spec['subjects'][index]}",
        "text": " ".join(sentences),
        "category": spec["category"],
    }


def main():
    rng = random.Random(20151)
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"
    docs = [make_doc(rng, topic, spec, i) for topic, spec in TOPICS.items() for i in range(6)]
    with open(out / "corpus.jsonl", "w", encoding="utf-8") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")
    with open(out / "labels.tsv", "w", encoding="utf-8") as f:
        for d in docs:
            f.write(f"{d['doc_id']}\t{d['category']}\n")


if __name__ == "__main__":
    main()
