"""Operator CLI.

Subcommands:
    serve               run the HTTP service
    replay PATH         fold a session log and print the resulting summary
    validate-templates  check quest templates, feedback phrase tables and
                        the helper catalog shipped in the configuration
    demo TOPIC          run a scripted offline session end to end over the
                        HTTP API and print a transcript
"""

import argparse
import json
import sys
import tempfile

from .core.reducer import reduce
from .core.types import initial_session
from .errors import SketchQuestError
from .feedback.compose import render_card
from .feedback.rules import default_config, load_config, placeholders, validate_framing
from .quest.engine import validate_quest
from .quest.templates import QuestDraft, default_inventory, load_templates
from .scaffold.catalog import default_catalog, load_catalog
from .scaffold.svg import sanitize_svg
from .service.config import ServiceConfig, load_service_config
from .service.eventlog import read_records

DEMO_TOPICS = ("photosynthesis", "water cycle", "cell structure")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sketchquest", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--config", help="path to a service config JSON file")
    p_serve.add_argument("--offline", action="store_true", help="force the offline provider")
    p_serve.add_argument("--listen", help="host:port to bind (overrides config)")

    p_replay = sub.add_parser("replay", help="recompute final state from a session log")
    p_replay.add_argument("log_path", help="path to a session .log file")

    p_vt = sub.add_parser("validate-templates", help="validate quest/feedback/catalog files")
    p_vt.add_argument("--config", help="service config naming the files to validate")

    p_demo = sub.add_parser("demo", help="scripted offline session end to end")
    p_demo.add_argument("topic", help=f"learning goal, e.g. one of {', '.join(DEMO_TOPICS)}")
    p_demo.add_argument("--style", default="watercolor", help="style for the final transform")
    p_demo.add_argument("--seed", type=int, default=7)
    p_demo.add_argument("--url", help="run against a live service instead of in-process")

    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "validate-templates":
            return _cmd_validate(args)
        return _cmd_demo(args)
    except SketchQuestError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _load_config(path: str | None) -> ServiceConfig:
    return load_service_config(path) if path else ServiceConfig()


def _cmd_serve(args) -> int:
    import uvicorn
    from dataclasses import replace as dc_replace

    from .providers.base import ProviderConfig
    from .service.api import create_app

    config = _load_config(args.config)
    if args.offline:
        config = dc_replace(config, provider=ProviderConfig())
    if args.listen:
        host, _, port = args.listen.rpartition(":")
        config = dc_replace(
            config,
            listen_host=host or config.listen_host,
            listen_port=int(port) if port else config.listen_port,
        )
    app = create_app(config)
    print(f"listening on http://{config.listen_host}:{config.listen_port}")
    uvicorn.run(app, host=config.listen_host, port=config.listen_port, log_level="info")
    return 0


def _cmd_replay(args) -> int:
    records = read_records(args.log_path)
    if not records:
        print("empty log")
        return 1
    session = initial_session(records[0].session_id)
    for record in records:
        session, _ = reduce(session, record.event)
    done, total = session.progress()
    print(f"session   {session.session_id}")
    print(f"events    {session.event_seq}")
    print(f"phase     {session.phase.value}")
    print(f"goal      {session.goal}")
    print(f"tasks     {done}/{total} completed")
    print(f"gems      {session.gems.gem_count}")
    print(f"cards     {len(session.feedback_log)}")
    print(f"revision  {session.canvas.revision}")
    if session.style_artifact:
        print(f"artifact  {session.style_artifact} ({session.style.value})")
    return 0


def _cmd_validate(args) -> int:
    config = _load_config(args.config)
    failures = 0

    inventory = (
        load_templates(config.quest_templates) if config.quest_templates else default_inventory()
    )
    for template in inventory.templates + (inventory.fallback,):
        draft = QuestDraft(goal_text=template.name or "goal", tasks=template.blueprints)
        quest, violations = validate_quest(draft)
        if quest is None:
            failures += 1
            for violation in violations:
                print(f"FAIL quest template {template.name}: {violation}")
        else:
            print(f"ok   quest template {template.name} ({len(quest.tasks)} tasks)")

    feedback = load_config(config.feedback_rules) if config.feedback_rules else default_config()
    dummy = {
        "progress_done": 2,
        "progress_total": 5,
        "missing_element": "stomata",
        "strategy_hint": feedback.table.strategy_hints.get("stalled", "pause and compare"),
        "completed_task": "Cell membrane",
        "quest_goal": "cell structure",
        "new_element": "nucleus",
    }
    for dimension, templates in feedback.table.templates.items():
        for template in templates:
            slots = {k: dummy[k] for k in placeholders(template)}
            card = render_card(dimension, slots, config=feedback)
            violations = validate_framing(card.text, feedback.rules, dimension)
            if violations:
                failures += 1
                print(f"FAIL feedback template [{dimension.value}] {template!r}: {violations}")
            else:
                print(f"ok   feedback template [{dimension.value}] {template[:46]!r}")

    catalog = load_catalog(config.helper_catalog) if config.helper_catalog else default_catalog()
    for entry in catalog.entries:
        result = sanitize_svg(entry.svg_body)
        if not result.ok:
            failures += 1
            print(f"FAIL helper {entry.label}: {result.reason}")
    print(f"ok   helper catalog ({len(catalog.entries)} entries)")

    if failures:
        print(f"{failures} validation failure(s)", file=sys.stderr)
        return 1
    print("all templates valid")
    return 0


def _cmd_demo(args) -> int:
    from .service.api import create_app

    if args.url:
        import httpx

        client = httpx.Client(base_url=args.url, timeout=30.0)
        closer = client.close
    else:
        from fastapi.testclient import TestClient

        data_dir = tempfile.mkdtemp(prefix="sketchquest-demo-")
        config = ServiceConfig(data_dir=data_dir, enable_monitor=False)
        client = TestClient(create_app(config))
        closer = client.close

    try:
        return _run_demo(client, args.topic, args.style, args.seed)
    finally:
        closer()


def _run_demo(client, topic: str, style: str, seed: int) -> int:
    def ok(response):
        if response.status_code >= 400:
            print(f"error: {response.status_code} {response.text}", file=sys.stderr)
            raise SystemExit(1)
        return response.json()

    view = ok(client.post("/sessions", json={"goal": topic}))
    sid = view["session_id"]
    print(f"session {sid}  goal={topic!r}")
    for task in view["quest"]["tasks"]:
        print(f"  task {task['index']}: [{task['bloom_name']}] {task['title']} -- {task['prompt']}")

    census: dict[str, int] = {}
    placed_helper = False
    stroke_n = 0
    for task in view["quest"]["tasks"]:
        print(f"task {task['index']}: {task['title']}")
        for criterion in task["criteria"]:
            label, need = criterion["label"], criterion["min_count"]
            if not placed_helper:
                helper = client.post(f"/sessions/{sid}/helpers", json={"hint": label})
                if helper.status_code == 200:
                    h = helper.json()
                    ok(
                        client.post(
                            f"/sessions/{sid}/helpers/{h['helper_id']}/place",
                            json={"x": 0.2, "y": 0.2},
                        )
                    )
                    census[h["label"]] = census.get(h["label"], 0) + 1
                    print(f"  placed helper {h['label']}")
                placed_helper = True
            while census.get(label, 0) < need:
                y = 0.1 + 0.08 * (stroke_n % 10)
                x = 0.1 + 0.05 * (stroke_n // 10)
                body = {
                    "points": [[x, y], [x + 0.25, y + 0.02], [x + 0.4, y]],
                    "color": "#3a6ea5",
                    "width": 0.006,
                    "element_tag": label,
                }
                ok(client.post(f"/sessions/{sid}/strokes", json=body))
                census[label] = census.get(label, 0) + 1
                stroke_n += 1
            print(f"  drew {label} x{need}")
        result = ok(client.post(f"/sessions/{sid}/check"))
        for card in result["cards"]:
            print(f"  [{card['dimension']}] {card['text']}")
        ok(client.post(f"/sessions/{sid}/tasks/{task['task_id']}/complete"))
        gems = ok(client.get(f"/sessions/{sid}"))["gems"]
        print(f"  completed -> gems={gems}")

    styled = ok(client.post(f"/sessions/{sid}/style", json={"style": style, "seed": seed}))
    image = client.get(styled["url"])
    final = ok(client.get(f"/sessions/{sid}"))
    print(
        f"final: phase={final['phase']} gems={final['gems']} "
        f"tasks={len(final['quest']['tasks'])} cards={len(final['feedback'])} "
        f"artifact={styled['artifact']} bytes={len(image.content)}"
    )
    return 0 if final["phase"] == "style_applied" else 1


if __name__ == "__main__":
    sys.exit(main())
