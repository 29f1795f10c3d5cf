#!/usr/bin/env python3
"""Build the small MNIST subset used by the tests and examples.

Source: the `mnist` npm package (MIT), which ships 10,000 MNIST digits as
JSON arrays of intensities scaled to [0,1] and rounded to 3 decimals.
round(x * 255) recovers the original byte exactly.

    npm install mnist
    python3 tools/make_mnist_subset.py node_modules/mnist/src/digits data/mnist

Writes IDX files in the public MNIST layout (big-endian header) plus the
digit-4 golden files for the pos/neg encoder test.
"""
import json
import random
import struct
import sys
from pathlib import Path

ROWS = COLS = 28
PIXELS = ROWS * COLS
TRAIN_COUNT = 1000
TEST_COUNT = 1000
SEED = 20221216
THRESHOLD = 127


def load_digits(digits_dir):
    samples = []
    for label in range(10):
        data = json.loads((digits_dir / f"{label}.json").read_text())["data"]
        for i in range(len(data) // PIXELS):
            chunk = data[i * PIXELS:(i + 1) * PIXELS]
            samples.append((label, i, bytes(round(v * 255) for v in chunk)))
    return samples


def write_images(path, images):
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), ROWS, COLS))
        for img in images:
            f.write(img)


def write_labels(path, labels):
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))


def main():
    digits_dir = Path(sys.argv[1])
    out_dir = Path(sys.argv[2])
    out_dir.mkdir(parents=True, exist_ok=True)

    samples = load_digits(digits_dir)
    # First "4" in the package: the sample used for the encoder golden files.
    digit4 = next(s for s in samples if s[0] == 4 and s[1] == 0)[2]

    rng = random.Random(SEED)
    rng.shuffle(samples)
    train = samples[:TRAIN_COUNT]
    test = samples[TRAIN_COUNT:TRAIN_COUNT + TEST_COUNT]

    write_images(out_dir / "train-images-idx3-ubyte", [s[2] for s in train])
    write_labels(out_dir / "train-labels-idx1-ubyte", [s[0] for s in train])
    write_images(out_dir / "test-images-idx3-ubyte", [s[2] for s in test])
    write_labels(out_dir / "test-labels-idx1-ubyte", [s[0] for s in test])
    write_images(out_dir / "digit4-idx3-ubyte", [digit4])

    golden = out_dir.parent.parent / "tests" / "golden"
    golden.mkdir(parents=True, exist_ok=True)
    (golden / "digit4_pixels.txt").write_text(" ".join(str(p) for p in digit4) + "\n")
    pos = ["1" if p > THRESHOLD else "0" for p in digit4]
    neg = ["0" if p > THRESHOLD else "1" for p in digit4]
    (golden / "digit4_pos.txt").write_text(" ".join(pos) + "\n")
    (golden / "digit4_neg.txt").write_text(" ".join(neg) + "\n")


if __name__ == "__main__":
    main()
