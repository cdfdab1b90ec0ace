"""Command-line interface.

  arth analyze <file>    print the cluster report as JSON
  arth quiz <file>       take the quiz interactively in the terminal
  arth annotate <file>   annotate offline, marking chosen clusters hard
  arth serve             run the HTTP API
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .annotate import annotate
from .clustering import build_profiles, choose_k, cluster_report, fit_cluster_model
from .preprocess import preprocess
from .quiz import evaluate_quiz, generate_quiz
from .session import Resources, SessionConfig, SessionStore


def _resources(ctx) -> Resources:
    options = ctx.obj
    return Resources.load(
        wordnet_dir=options["wordnet"],
        frequency_path=options["freq"],
        stopword_path=options["stopwords"],
        config=SessionConfig(seed=options["seed"]),
    )


def _pipeline(resources: Resources, text: str, seed: int):
    doc = preprocess(text, resources.stoplist, resources.kb)
    profiles = build_profiles(doc, resources.freq_store)
    if not profiles:
        return doc, profiles, None, None
    k = choose_k(len(profiles))
    model, params = fit_cluster_model(profiles, k, seed)
    return doc, profiles, model, params


@click.group()
@click.option("--seed", default=0, show_default=True, help="Random seed.")
@click.option("--wordnet", type=click.Path(exists=True, file_okay=False),
              default=None, help="WordNet 3.x database directory (default: bundled toy).")
@click.option("--freq", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Frequency TSV (default: bundled list).")
@click.option("--stopwords", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Stopword file (default: bundled list).")
@click.pass_context
def main(ctx, seed, wordnet, freq, stopwords):
    """Personalized reading assistance: difficulty clustering, quiz, glosses."""
    ctx.obj = {"seed": seed, "wordnet": wordnet, "freq": freq, "stopwords": stopwords}


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def analyze(ctx, file):
    """Cluster the vocabulary of FILE and print the report."""
    resources = _resources(ctx)
    text = Path(file).read_text("utf-8")
    _, profiles, model, params = _pipeline(resources, text, ctx.obj["seed"])
    if model is None:
        click.echo(json.dumps({"k": 0, "clusters": []}))
        return
    click.echo(json.dumps(cluster_report(model, profiles, params), indent=2))


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def quiz(ctx, file):
    """Run the generated quiz interactively and print verdicts."""
    resources = _resources(ctx)
    text = Path(file).read_text("utf-8")
    doc, profiles, model, _ = _pipeline(resources, text, ctx.obj["seed"])
    if model is None:
        click.echo("Nothing to quiz: no content words found.")
        return
    generated = generate_quiz(model, doc, resources.kb, ctx.obj["seed"],
                              resources.stoplist)
    if not generated.questions:
        click.echo("Nothing to quiz: no askable words.")
        return
    answers = {}
    for question in generated.questions:
        click.echo(f"\n{question.prompt}")
        for i, option in enumerate(question.options):
            click.echo(f"  {i + 1}. {option}")
        pick = click.prompt("Answer", type=click.IntRange(1, len(question.options)))
        answers[question.id] = pick - 1
    click.echo("")
    for verdict in evaluate_quiz(generated, answers):
        click.echo(
            f"cluster {verdict.cluster_id}: {verdict.correct}/{verdict.asked} "
            f"-> {verdict.verdict}"
        )


@main.command("annotate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--hard-cluster", "hard_clusters", multiple=True, type=int,
              required=True, help="Cluster id to treat as hard (repeatable).")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of plain text.")
@click.pass_context
def annotate_cmd(ctx, file, hard_clusters, as_json):
    """Annotate FILE with glosses for the given clusters' words."""
    resources = _resources(ctx)
    text = Path(file).read_text("utf-8")
    doc, profiles, model, _ = _pipeline(resources, text, ctx.obj["seed"])
    if model is None:
        click.echo(text, nl=False)
        return
    hard = {p.lemma for p in profiles if p.cluster in set(hard_clusters)}
    result = annotate(doc, hard, resources.kb, resources.stoplist)
    if as_json:
        click.echo(json.dumps(result.to_json(), indent=2))
    else:
        click.echo(result.text, nl=False)
    if result.skipped:
        click.echo(f"\n[skipped, no gloss available: {', '.join(result.skipped)}]",
                   err=True)


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data", type=click.Path(file_okay=False), default="./sessions",
              show_default=True, help="Session persistence directory.")
@click.pass_context
def serve(ctx, port, host, data):
    """Run the HTTP JSON API."""
    import uvicorn

    from .service import create_app

    app = create_app(_resources(ctx), SessionStore(data))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
