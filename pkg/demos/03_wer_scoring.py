"""Word-error-rate scoring: alignments, per-pair rates, corpus aggregation.

    python demos/03_wer_scoring.py
"""

from roomvoice.asr.wer import evaluate_corpus, wer, word_align

pairs = [
    ("allume la lumière", "allume la lumière"),
    ("allume la lumière", "allume lumière"),
    ("projette le document budget", "projette un document du budget"),
    ("compte les votes pour", "compte les voix pour"),
]

for ref, hyp in pairs:
    alignment = word_align(ref, hyp)
    ops = " ".join(op for op, _, _ in alignment.ops)
    print(f"ref: {ref!r}")
    print(f"hyp: {hyp!r}")
    print(f"  ops: {ops}  (S={alignment.substitutions} "
          f"D={alignment.deletions} I={alignment.insertions} "
          f"C={alignment.correct})")
    print(f"  WER: {wer(ref, hyp):.4f}")

report = evaluate_corpus(pairs)
print(f"\naggregate over {len(report.pairs)} pairs: "
      f"{report.aggregate_wer:.4f} "
      f"({report.total_errors} errors / {report.total_ref_tokens} tokens)")
print("note: the aggregate weights by reference length, it is not the "
      "mean of the per-pair rates")
