"""Instance checks of the structural results on a nilpotent example.

heis3 has a one-dimensional center, so hypotheses that need Ann(T) = 0
are reported as skipped rather than failed.
"""

from colorhom import corpus, verify_lemmas

a = corpus.builtin("heis3").algebra
rep = verify_lemmas(a, kmax=1)
for entry in rep.entries:
    print(f"Lemma {entry.lemma}: {entry.status}  ({entry.note})" if entry.note
          else f"Lemma {entry.lemma}: {entry.status}")
    for c in entry.checks:
        extra = f" - {c.witness['reason']}" if c.status == "skipped" else ""
        print(f"    {c.id:<22} {c.status:<8} {c.instances:>5} instances{extra}")
print("\nall passed:", rep.ok)
