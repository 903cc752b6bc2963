import logging

from lab.commands import LabCommand, write_json
from lab.config import merge, output_dir, read_config, threads
from lab.manifest import MANIFEST_NAME, RunManifest
from lab.serializers import ValidationConfigSerializer
from networks.formats import write_table
from validation.data import load_rounds, synthetic_rounds
from validation.scoring import evaluate

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Score the answer-revision rules H1-H6 on group-estimation rounds"

    def add_arguments(self, parser):
        parser.add_argument("--data", help='"synthetic" or a CSV in the published schema')
        parser.add_argument("--kind", help="rule behind synthetic rounds: median, mean or inertia")
        parser.add_argument("--hypotheses", help="comma-separated, e.g. H1,H2")
        parser.add_argument("--seed", type=int)
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        hypotheses = options["hypotheses"]
        if hypotheses is not None:
            hypotheses = [name.strip().upper() for name in hypotheses.split(",") if name.strip()]
        config = merge(
            read_config(options["config"]),
            data=options["data"],
            kind=options["kind"],
            hypotheses=hypotheses,
            seed=options["seed"],
        )
        serializer = ValidationConfigSerializer(data=config)
        serializer.is_valid(raise_exception=True)
        settings = serializer.validated_data
        threads(options["threads"])  # checked only; scoring is sequential

        if serializer.synthetic:
            data = synthetic_rounds(
                settings["kind"],
                settings["seed"],
                experiments=settings["experiments"],
                game=settings["game"],
                inertia=settings["inertia"],
            )
        else:
            data = load_rounds(settings["data"])

        evaluation = evaluate(data, settings["hypotheses"], tuple(settings["transitions"]))

        out = output_dir(options["out"])
        fmt = options["format"] or "csv"
        manifest = RunManifest(
            command="validate", config=dict(serializer.data), master_seed=settings["seed"] if serializer.synthetic else None
        )
        metrics = write_json(evaluation.report, out / "metrics.json")
        points = write_table(evaluation.points, out / "errors", fmt)
        if serializer.synthetic:
            manifest.add(write_table(data.to_frame(), out / "rounds", fmt), out)
        manifest.add(metrics, out)
        manifest.add(points, out)
        manifest.write(out / MANIFEST_NAME)
        logger.info("Validation metrics written to %s", metrics)
        self.stdout.write(str(out))
