"""Generate a vocabulary quiz from the clustered story, simulate a reader
whose answers put one cluster in the middle band, and show the follow-up
retest splitting that cluster into two sub-groups."""

import tempfile

from arth.frequency import bundled_frequency_list
from arth.preprocess import default_stoplist
from arth.session import (
    Resources,
    SessionStore,
    create_session,
    submit_answers,
)
from arth.wordnet import load_wordnet
from arth.session import TOY_WORDNET

STORY = (
    "The happy cat saw the dog near the bank. "
    "A zygote divides into many cells. "
    "The unhappy puppy ran quickly to the river bank for a picnic. "
    "A good animal cannot sit still and divides its time."
)


def main():
    resources = Resources(load_wordnet(TOY_WORDNET), bundled_frequency_list(),
                          default_stoplist())
    store = SessionStore(tempfile.mkdtemp())

    session, payload = create_session(STORY, resources, store, seed=0)
    print(f"session {session.id[:8]}… state={session.state}")
    for q in payload["questions"]:
        print(f"\n[{q['id']}] {q['prompt']}")
        for i, option in enumerate(q["options"]):
            print(f"   {i + 1}. {option}")

    # simulate: half right on the first multi-question cluster, rest perfect
    quiz = session.quizzes[0]
    per_cluster = {}
    for q in quiz.questions:
        per_cluster.setdefault(q.cluster_id, []).append(q)
    target = next(c for c, qs in per_cluster.items() if len(qs) >= 2)
    answers = {}
    for cluster_id, questions in per_cluster.items():
        right = len(questions) // 2 if cluster_id == target else len(questions)
        for i, q in enumerate(questions):
            answers[q.id] = q.correct_index if i < right else (q.correct_index + 1) % 4

    response = submit_answers(session, answers, resources, store)
    print("\nverdicts:")
    for v in response["verdicts"]:
        print(f"  cluster {v['cluster_id']}: {v['correct']}/{v['asked']} -> {v['verdict']}")

    if "quiz" in response:
        retest = response["quiz"]
        print(f"\nretest issued ({len(retest['questions'])} questions):")
        for q in retest["questions"]:
            print(f"  [{q['id']}] group {q['group_id']}: {q['prompt']}")
        # answer the retest perfectly: the middling cluster turns out easy
        key = {q.id: q.correct_index for q in session.quizzes[-1].questions}
        final = submit_answers(session, key, resources, store)
        print("\nretest verdicts:")
        for v in final["verdicts"]:
            print(f"  group {v['group_id']}: {v['correct']}/{v['asked']} -> {v['verdict']}")

    print(f"\nfinal state: {session.state}; hard words: {sorted(session.hard_lemmas) or 'none'}")


if __name__ == "__main__":
    main()
