#!/usr/bin/env python3
"""Fetch grayscale test images into data/ for the reference-MSE checks.

Lena (512x512) is taken from the source distribution of the `bm3d` package on
PyPI and converted to 8-bit luma (BT.601 weights, rounded). House is not
redistributed by any package we know of; copy a 256x256 8-bit grayscale
House image to data/house.pgm yourself (any tool that writes binary PGM will
do, e.g. `python -c "from PIL import Image; Image.open('house.png').convert('L').save('data/house.pgm')"`).
"""

import argparse
import pathlib
import subprocess
import sys
import tarfile
import tempfile

import numpy as np
from PIL import Image

BM3D_SDIST = "bm3d==4.0.3"
LENA_MEMBER = "bm3d-4.0.3/examples/image_Lena512rgb.png"


def write_pgm(path: pathlib.Path, gray: np.ndarray) -> None:
    h, w = gray.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(gray.astype(np.uint8).tobytes())


def fetch_lena(out_dir: pathlib.Path) -> None:
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", BM3D_SDIST, "--no-deps", "--no-binary", ":all:", "-d", tmp, "-q"],
            check=True,
        )
        sdist = next(pathlib.Path(tmp).glob("bm3d-*.tar.gz"))
        with tarfile.open(sdist) as tar:
            member = tar.extractfile(LENA_MEMBER)
            if member is None:
                raise SystemExit(f"{LENA_MEMBER} not found in {sdist.name}")
            rgb = np.asarray(Image.open(member).convert("RGB"), dtype=np.float64)
    luma = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    write_pgm(out_dir / "lena.pgm", np.clip(np.floor(luma + 0.5), 0, 255))
    print(f"wrote {out_dir / 'lena.pgm'}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path(__file__).resolve().parent.parent / "data")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    fetch_lena(args.out)
    if not (args.out / "house.pgm").exists():
        print(f"note: {args.out / 'house.pgm'} is missing; the House rows of the reference-MSE check will be skipped")


if __name__ == "__main__":
    main()
