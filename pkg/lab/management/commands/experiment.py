import logging

from experiments.models import ExperimentRun
from experiments.presets import PRESETS, SCALES, run_study
from experiments.serializers import ExperimentConfigSerializer
from lab.commands import LabCommand
from lab.config import merge, output_dir, read_config, threads
from lab.manifest import MANIFEST_NAME, RunManifest

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Run a Monte Carlo study from a preset or a JSON config and write its tables"

    def add_arguments(self, parser):
        parser.add_argument("--preset", choices=sorted(PRESETS))
        parser.add_argument("--scale", choices=SCALES)
        parser.add_argument("--seed", type=int, dest="master_seed")
        parser.add_argument("--trials", type=int)
        parser.add_argument("--record", action="store_true", help="store the run and its trials in the database")
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        config = merge(
            read_config(options["config"]),
            preset=options["preset"],
            scale=options["scale"],
            master_seed=options["master_seed"],
            trials=options["trials"],
        )
        serializer = ExperimentConfigSerializer(data=config)
        serializer.is_valid(raise_exception=True)
        study = serializer.to_study()
        workers = threads(options["threads"])

        manifest = RunManifest(
            command="experiment", config={"request": config, "resolved": study.as_dict()}, master_seed=study.master_seed
        )
        logger.info("Running %s with %d threads", type(study).__name__, workers)
        result = run_study(study, threads=workers)

        out = output_dir(options["out"])
        for path in result.write(out, options["format"] or "csv"):
            manifest.add(path, out)
        manifest.failures = [failure.as_dict() for failure in result.failures]
        manifest.write(out / MANIFEST_NAME)

        if options["record"]:
            run = ExperimentRun.record(
                result,
                preset=serializer.validated_data.get("preset", ""),
                scale=serializer.validated_data["scale"] if "preset" in serializer.validated_data else "",
                manifest=manifest.as_dict(),
            )
            logger.info("Recorded run %s with %d trial records", run.pk, len(result.outcomes))

        if result.failures:
            self.stderr.write(f"{len(result.failures)} trials failed; see {out / MANIFEST_NAME}")
        self.stdout.write(str(out))
