"""Command-line entry points.

    roomvoice eval-wer --ref ref.txt --hyp hyp.txt
    roomvoice train-nlu --corpus corpus.tsv --out model.json
    roomvoice run --config device.json --wav command.wav
    roomvoice track --geometry 640x320 --detections scene.txt
    roomvoice fleet serve --state-dir ./state --listen 127.0.0.1:8070
    roomvoice asr-mock --fixtures script.json --listen 127.0.0.1:8071

The fleet heartbeat interval honors the ROOMVOICE_HEARTBEAT_INTERVAL
environment variable (seconds).
"""

import argparse
import os
import sys

HEARTBEAT_ENV = "ROOMVOICE_HEARTBEAT_INTERVAL"


def cmd_eval_wer(args) -> int:
    from roomvoice.asr.wer import evaluate_corpus

    refs = open(args.ref, encoding="utf-8").read().splitlines()
    hyps = open(args.hyp, encoding="utf-8").read().splitlines()
    if len(refs) != len(hyps):
        print(f"error: {args.ref} has {len(refs)} lines, "
              f"{args.hyp} has {len(hyps)}", file=sys.stderr)
        return 2
    report = evaluate_corpus(list(zip(refs, hyps)))
    for pair in report.pairs:
        i = pair["index"]
        print(f"line {i + 1}: WER {pair['wer']:.4f} "
              f"(S={pair['substitutions']} D={pair['deletions']} "
              f"I={pair['insertions']} / {pair['ref_tokens']} ref tokens)")
    for skip in report.skipped:
        print(f"line {skip['index'] + 1}: skipped ({skip['reason']})")
    print(f"aggregate WER: {report.aggregate_wer:.4f} "
          f"({report.total_errors} errors / {report.total_ref_tokens} tokens)")
    return 0


def cmd_train_nlu(args) -> int:
    from roomvoice.nlu.corpus import load_bundled_corpus, load_corpus
    from roomvoice.nlu.model import interpret, train

    corpus = (load_corpus(args.corpus) if args.corpus
              else load_bundled_corpus())
    model = train(corpus)
    correct = sum(1 for ex in corpus
                  if interpret(ex.text, model).intent == ex.intent)
    model.save(args.out)
    print(f"trained {len(model.labels)} intents on {len(corpus)} examples")
    print(f"training accuracy: {correct / len(corpus):.3f}")
    print(f"model written to {args.out}")
    return 0


def cmd_run(args) -> int:
    from roomvoice.runtime.builder import build_engine
    from roomvoice.runtime.config import load_config
    from roomvoice.runtime.telemetry import LineFileSink

    cfg = load_config(args.config)
    sinks = [LineFileSink(args.log)] if args.log else []
    engine = build_engine(cfg, sinks=sinks)
    if args.wav:
        report = engine.run_wav(args.wav)
    else:
        # Live stand-in: raw 16 kHz 16-bit mono PCM on stdin.
        import numpy as np

        print("reading 16 kHz 16-bit mono PCM from stdin...", file=sys.stderr)
        while True:
            raw = sys.stdin.buffer.read(3200)
            if not raw:
                break
            engine.push_chunk(np.frombuffer(raw, dtype="<i2").astype(float))
        report = engine.report()

    for event in report.events:
        print(event)
    print(f"final state: {report.final_state}")
    print(f"utterances captured: {report.captured_utterances}, "
          f"buffers released: {report.release_receipts}")
    for result in report.dispatches:
        print(f"action: [{result.skill}] {result.outcome}: {result.payload}")
    return 0


def cmd_track(args) -> int:
    from roomvoice.tracker.core import PanoramaTracker
    from roomvoice.tracker.geometry import PanoramaGeometry
    from roomvoice.tracker.replay import load_detections

    try:
        w, h = (int(v) for v in args.geometry.lower().split("x"))
    except ValueError:
        print("error: --geometry must look like 640x320", file=sys.stderr)
        return 2
    tracker = PanoramaTracker(PanoramaGeometry(w, h))
    for t, detections in load_detections(args.detections):
        for event in tracker.step(detections, t):
            print(f"t={event.timestamp:.2f} track {event.track_id} "
                  f"{event.kind}")
    print(f"confirmed participants: {tracker.count_confirmed()}")
    for track in tracker.tracks:
        print(f"track {track.track_id}: {track.state} "
              f"azimuth {tracker.azimuth(track):.1f}° "
              f"box {tuple(round(v, 1) for v in track.box)}")
    return 0


def cmd_fleet_serve(args) -> int:
    import uvicorn

    from roomvoice.fleet.service import create_app
    from roomvoice.fleet.store import FleetStore, SnapshotError

    interval = float(os.environ.get(HEARTBEAT_ENV, args.heartbeat_interval))
    store = FleetStore(heartbeat_interval_s=interval)
    snapshot = None
    if args.state_dir:
        os.makedirs(args.state_dir, exist_ok=True)
        snapshot = os.path.join(args.state_dir, "fleet-state.json")
        if os.path.exists(snapshot):
            try:
                store.load_snapshot(snapshot)
            except SnapshotError as exc:
                print(f"refusing to start: {exc}", file=sys.stderr)
                return 2
        store.autosave_path = snapshot
    host, _, port = args.listen.rpartition(":")
    app = create_app(store, token=args.token)
    print(f"fleet service on http://{args.listen} "
          f"(heartbeat interval {interval:g}s"
          + (f", state {snapshot}" if snapshot else "") + ")")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port),
                log_level="warning")
    return 0


def cmd_asr_mock(args) -> int:
    import uvicorn

    from roomvoice.asr.mock import MockAsrBackend, create_app, load_fixture

    backend = load_fixture(args.fixtures) if args.fixtures else MockAsrBackend()
    host, _, port = args.listen.rpartition(":")
    print(f"mock ASR backend on http://{args.listen}/transcribe")
    uvicorn.run(create_app(backend), host=host or "127.0.0.1", port=int(port),
                log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roomvoice",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-wer", help="score hypothesis lines against references")
    p.add_argument("--ref", required=True)
    p.add_argument("--hyp", required=True)
    p.set_defaults(func=cmd_eval_wer)

    p = sub.add_parser("train-nlu", help="train the intent model")
    p.add_argument("--corpus", help="TSV corpus (default: bundled French commands)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_nlu)

    p = sub.add_parser("run", help="run the command pipeline")
    p.add_argument("--config", required=True)
    p.add_argument("--wav", help="offline mode: replay this WAV deterministically")
    p.add_argument("--log", help="append the event log to this file")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("track", help="replay a detection file through the tracker")
    p.add_argument("--geometry", required=True, metavar="WxH")
    p.add_argument("--detections", required=True)
    p.set_defaults(func=cmd_track)

    fleet = sub.add_parser("fleet", help="fleet administration service")
    fleet_sub = fleet.add_subparsers(dest="fleet_command", required=True)
    p = fleet_sub.add_parser("serve")
    p.add_argument("--state-dir")
    p.add_argument("--listen", default="127.0.0.1:8070")
    p.add_argument("--token")
    p.add_argument("--heartbeat-interval", type=float, default=30.0)
    p.set_defaults(func=cmd_fleet_serve)

    p = sub.add_parser("asr-mock", help="serve the scripted ASR backend")
    p.add_argument("--fixtures")
    p.add_argument("--listen", default="127.0.0.1:8071")
    p.set_defaults(func=cmd_asr_mock)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
