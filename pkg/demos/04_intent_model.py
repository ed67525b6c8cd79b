"""Intent classification and entity extraction on the bundled French corpus.

    python demos/04_intent_model.py
"""

from roomvoice.nlu import (
    default_entity_specs,
    interpret,
    load_bundled_corpus,
    split_corpus,
    train,
)

corpus = load_bundled_corpus()
model = train(corpus)
specs = default_entity_specs()
print(f"trained on {len(corpus)} examples, intents: {', '.join(model.labels)}")

train_set, holdout = split_corpus(corpus)
holdout_model = train(train_set)
hits = sum(1 for ex in holdout
           if interpret(ex.text, holdout_model).intent == ex.intent)
print(f"held-out accuracy ({len(holdout)} unseen paraphrases): "
      f"{hits / len(holdout):.1%}\n")

queries = [
    "allume la lumière",
    "allume la lumière de la salle jaune",
    "compte les votes pour",
    "planifie une réunion demain à 14:30",
    "combien de personnes dans la salle",
    "quel temps fera-t-il demain",   # out of domain
]
for text in queries:
    result = interpret(text, model, specs)
    entities = ", ".join(f"{e.type}={e.value!r}" for e in result.entities)
    print(f"{text!r}")
    print(f"  -> {result.intent} (confidence {result.confidence:.3f})"
          + (f"  [{entities}]" if entities else ""))
