"""Regenerate the golden .bmx files for the biwheel-plus and Moebius matrices.

Built directly from the block layout with numpy, independently of the
package constructors:

    [ I_{n+1} | top        | top'   ]
    [         | I_n        | A_n    ]

with ``top`` all ones and ``top'`` zero (biwheel-plus) or e_n (Moebius).

    python tests/golden/generate.py
"""

from pathlib import Path

import numpy as np

HERE = Path(__file__).parent


def a_block(n):
    a = np.eye(n, dtype=np.uint8)
    a[np.arange(1, n), np.arange(n - 1)] = 1
    a[0, n - 1] = 1
    return a


def block_matrix(n, mobius):
    top_prime = np.zeros(n, dtype=np.uint8)
    if mobius:
        top_prime[n - 1] = 1
    right = np.vstack([np.hstack([np.ones(n, dtype=np.uint8), top_prime]),
                       np.hstack([np.eye(n, dtype=np.uint8), a_block(n)])])
    return np.hstack([np.eye(n + 1, dtype=np.uint8), right])


def labels(n):
    return ["z"] + [f"x{i}" for i in range(2, n + 2)] + [f"s{j}" for j in range(1, n + 1)] + [f"t{j}" for j in range(1, n + 1)]


def render(name, mat, labs):
    lines = [f"matroid {name}", f"rank {mat.shape[0]}", "elements " + " ".join(labs)]
    lines += ["row " + "".join(str(int(v)) for v in row) for row in mat]
    return "\n".join(lines) + "\n"


def golden_texts():
    out = {}
    for n in range(4, 9):
        for family, mobius in (("biwheel_plus", False), ("mobius_delta", True)):
            out[f"{family}_{n}.bmx"] = render(f"{family}({n})", block_matrix(n, mobius), labels(n))
    return out


if __name__ == "__main__":
    for fname, text in golden_texts().items():
        (HERE / fname).write_text(text)
        print("wrote", fname)
