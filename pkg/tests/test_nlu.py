import pytest

from roomvoice.nlu import (
    CorpusError,
    EntitySpec,
    EntitySpecError,
    IntentModel,
    TrainingExample,
    default_entity_specs,
    extract_entities,
    interpret,
    load_entity_specs,
    parse_corpus,
    save_corpus,
    split_corpus,
    train,
)


def make(intent, *texts):
    return [TrainingExample(text=t, intent=intent) for t in texts]


class TestTraining:
    def test_disjoint_vocabularies_classify_cleanly(self):
        corpus = make("a", "pomme poire") + make("b", "vis boulon")
        model = train(corpus)
        for ex in corpus:
            r = interpret(ex.text, model)
            assert r.intent == ex.intent
            assert r.confidence > 0.5

    def test_single_intent_rejected(self):
        with pytest.raises(CorpusError):
            train(make("only", "un", "deux"))

    def test_duplication_leaves_decisions_unchanged(self, bundled_corpus):
        model = train(bundled_corpus)
        doubled = train(list(bundled_corpus) + list(bundled_corpus))
        for ex in bundled_corpus:
            a = max(model.posteriors(ex.text).items(), key=lambda kv: kv[1])
            b = max(doubled.posteriors(ex.text).items(), key=lambda kv: kv[1])
            assert a[0] == b[0]

    def test_order_independence(self, bundled_corpus):
        model = train(bundled_corpus)
        reordered = train(list(reversed(bundled_corpus)))
        for ex in bundled_corpus[:20]:
            assert (interpret(ex.text, model).intent
                    == interpret(ex.text, reordered).intent)


class TestBundledCorpus:
    def test_shape(self, bundled_corpus):
        intents = {}
        for ex in bundled_corpus:
            intents.setdefault(ex.intent, []).append(ex)
        assert len(intents) == 10
        assert all(len(v) == 20 for v in intents.values())

    def test_training_accuracy_is_total(self, bundled_corpus, bundled_model):
        for ex in bundled_corpus:
            assert interpret(ex.text, bundled_model).intent == ex.intent

    def test_holdout_accuracy(self, bundled_corpus):
        train_set, holdout = split_corpus(bundled_corpus)
        assert len(holdout) == 40
        model = train(train_set)
        hits = sum(1 for ex in holdout
                   if interpret(ex.text, model).intent == ex.intent)
        assert hits / len(holdout) >= 0.9

    def test_light_command_from_field_study(self, bundled_model):
        r = interpret("allume la lumière", bundled_model)
        assert r.intent == "light_on"
        assert r.confidence > 0.5

    def test_vote_command_with_polarity(self, bundled_model):
        r = interpret("compte les votes pour", bundled_model,
                      default_entity_specs())
        assert r.intent == "count_votes"
        assert ("polarity", "pour") in [(e.type, e.value) for e in r.entities]


class TestInterpret:
    def test_empty_text_is_unknown(self, bundled_model):
        r = interpret("", bundled_model)
        assert (r.intent, r.confidence, r.entities) == ("unknown", 0.0, [])
        assert interpret("  !?  ", bundled_model).intent == "unknown"

    def test_posteriors_normalized(self, bundled_model):
        p = bundled_model.posteriors("allume la lumière de la salle")
        assert sum(p.values()) == pytest.approx(1.0, abs=1e-9)

    def test_off_domain_text_is_unknown(self, bundled_model):
        r = interpret("xylophone quantique zygomatique", bundled_model)
        assert r.intent == "unknown"
        assert r.confidence < 0.5

    def test_determinism(self, bundled_corpus, bundled_model):
        again = train(list(bundled_corpus))
        for text in ["allume la lumière", "compte les participants"]:
            a, b = interpret(text, bundled_model), interpret(text, again)
            assert (a.intent, a.confidence) == (b.intent, b.confidence)


class TestModelSerialization:
    def test_round_trip(self, bundled_model, bundled_corpus, tmp_path):
        path = tmp_path / "model.json"
        bundled_model.save(path)
        back = IntentModel.load(path)
        assert back.labels == bundled_model.labels
        for ex in bundled_corpus[:30]:
            assert (interpret(ex.text, back).intent
                    == interpret(ex.text, bundled_model).intent)


class TestCorpusFormat:
    def test_parse_with_annotations(self):
        text = "light_on\tallume la salle jaune\troom:10:21\n"
        examples = parse_corpus(text)
        assert examples[0].entities == [(10, 21, "room", "salle jaune")]

    def test_bad_annotation_reports_line(self):
        with pytest.raises(CorpusError, match=":2"):
            parse_corpus("a\tun texte\nb\tautre\tbroken\n")

    def test_span_bounds_checked(self):
        with pytest.raises(CorpusError, match="outside"):
            parse_corpus("a\tcourt\troom:2:99\n")

    def test_overlapping_spans_rejected(self):
        with pytest.raises(CorpusError, match="overlap"):
            parse_corpus("a\tsalle jaune haute\troom:0:11\troom:6:17\n")

    def test_save_load_round_trip(self, tmp_path):
        examples = parse_corpus("x\tallume la salle jaune\troom:10:21\n"
                                "y\tcoupe tout\n")
        path = tmp_path / "c.tsv"
        save_corpus(examples, path)
        again = parse_corpus(path.read_text(), source=str(path))
        assert [(e.intent, e.text, e.entities) for e in again] == \
            [(e.intent, e.text, e.entities) for e in examples]


class TestEntities:
    def test_gazetteer_longest_match(self):
        specs = [EntitySpec.gazetteer("room", ["salle jaune", "salle bleue",
                                               "salle"])]
        out = extract_entities("allume la lumière de la salle jaune", specs)
        assert [(e.type, e.value) for e in out] == [("room", "salle jaune")]

    def test_no_match_is_empty(self):
        assert extract_entities("bonjour tout le monde",
                                default_entity_specs()) == []

    def test_time_pattern(self):
        out = extract_entities("réunion à 14:30", default_entity_specs())
        assert ("time", "14:30") in [(e.type, e.value) for e in out]

    def test_int_pattern_does_not_eat_times(self):
        out = extract_entities("salle 12 à 09:45", default_entity_specs())
        values = {(e.type, e.value) for e in out}
        assert ("int", "12") in values
        assert ("time", "09:45") in values
        assert ("int", "09") not in values

    def test_values_are_verbatim_substrings(self):
        text = "Réserve la SALLE JAUNE demain"
        out = extract_entities(text, [EntitySpec.gazetteer("room",
                                                           ["salle jaune"])])
        assert out[0].value == "SALLE JAUNE"
        assert text[out[0].start:out[0].end] == out[0].value

    def test_output_spans_never_overlap(self):
        specs = [EntitySpec.gazetteer("a", ["un deux"]),
                 EntitySpec.gazetteer("b", ["deux trois"])]
        out = extract_entities("un deux trois", specs)
        assert len(out) == 1
        assert out[0].type == "b"  # "deux trois" is the longer match

    def test_ties_resolved_leftmost(self):
        specs = [EntitySpec.gazetteer("a", ["un deux"]),
                 EntitySpec.gazetteer("b", ["deux trois"])]
        out = extract_entities("un deux trois quatre un deux", specs)
        # equal-length candidates would overlap at "deux"; leftmost wins
        same_len = [EntitySpec.gazetteer("x", ["alpha beta"]),
                    EntitySpec.gazetteer("y", ["beta gamma"])]
        tied = extract_entities("alpha beta gamma", same_len)
        assert len(tied) == 1 and tied[0].type == "x"

    def test_malformed_pattern_fails_at_load(self):
        with pytest.raises(EntitySpecError):
            EntitySpec.from_pattern("broken", "([")
        with pytest.raises(EntitySpecError):
            load_entity_specs([{"type": "x", "kind": "nonsense"}])
        specs = load_entity_specs([
            {"type": "room", "kind": "gazetteer", "values": ["salle verte"]},
            {"type": "time", "kind": "pattern"},
        ])
        assert len(specs) == 2
