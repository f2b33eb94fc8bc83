"""Regenerate the shipped equivariant-module fixtures in src/nilhecke/fixtures/."""

import json
from pathlib import Path

from nilhecke.equivariant import EquivariantModule, regular_module, twisted_trivial_module
from nilhecke.presets import preset

OUT = Path(__file__).resolve().parents[1] / "src" / "nilhecke" / "fixtures"


def constant(name, *diag):
    g = preset(name)
    return EquivariantModule(g, [0] * len(diag[0]),
                             [[[d[a] if a == b else 0 for a in range(len(d))] for b in range(len(d))]
                              for d in diag])


def main():
    fixtures = {
        "a1_trivial": constant("A1", [1]),
        "a1_sign": constant("A1", [-1]),
        "a1_twisted": twisted_trivial_module(preset("A1"), [0, 1], [[1, "a1"], [0, 1]]),
        "a1xa1_mixed": constant("A1xA1", [1], [-1]),
        "a2_trivial": constant("A2", [1], [1]),
        "a2_sign": constant("A2", [-1], [-1]),
        "a2_twisted": twisted_trivial_module(
            preset("A2"), [0, 1, 2, 3],
            [[1, "a1", "a1*a2", "a1^3"], [0, 1, "a1+a2", "a2^2"], [0, 0, 1, "2*a1-a2"], [0, 0, 0, 1]]),
        "a2_regular": regular_module(preset("A2")),
        "b2_twisted": twisted_trivial_module(preset("B2"), [0, 2], [[1, "a1*a2+a2^2"], [0, 1]]),
        "g2_twisted": twisted_trivial_module(
            preset("G2"), [0, 1, 3], [[1, "a2", "a1^3"], [0, 1, "a1*a2-a2^2"], [0, 0, 1]]),
        "i2_5_twisted": twisted_trivial_module(preset("I2_5"), [0, 1], [[1, "c*a1+a2"], [0, 1]]),
        "a3_twisted": twisted_trivial_module(
            preset("A3"), [0, 1, 2], [[1, "a2", "a1*a3"], [0, 1, "a1+a2+a3"], [0, 0, 1]]),
        "h3_trivial": constant("H3", [1, 1], [1, 1], [1, 1]),
    }
    OUT.mkdir(exist_ok=True)
    for name, module in fixtures.items():
        (OUT / f"{name}.json").write_text(json.dumps(module.to_config(), indent=2) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
