"""Regenerate the fixture corpus: ``python scripts/make_corpus.py [outdir]``."""
import os
import sys

from linkcomb.errors import BadParams
from linkcomb.instances import corpus_instance, corpus_name, corpus_specs
from linkcomb.io import save


def main(outdir: str = "corpus") -> None:
    os.makedirs(outdir, exist_ok=True)
    written = 0
    for spec in corpus_specs():
        try:
            inst = corpus_instance(spec)
        except BadParams as exc:
            print(f"skip {spec}: {exc}")
            continue
        save(inst, os.path.join(outdir, corpus_name(spec) + ".json"))
        written += 1
    print(f"wrote {written} fixtures to {outdir}")


if __name__ == "__main__":
    main(*sys.argv[1:])
