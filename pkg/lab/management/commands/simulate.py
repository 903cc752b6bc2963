import logging

from dynamics.baselines import BaselineParams, sample_baseline_params
from dynamics.engine import write_trajectory
from dynamics.models import run_model
from dynamics.seeding import substream
from experiments.samplers import RANGES, sample_initial
from lab.commands import LabCommand, read_network, write_json
from lab.config import ConfigError, merge, output_dir, read_config, threads
from lab.manifest import MANIFEST_NAME, RunManifest
from lab.serializers import SimulationConfigSerializer
from networks.formats import content_hash
from networks.generators import generate
from networks.serializers import GeneratorConfigSerializer

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Run one opinion model from seeded initial opinions and write its trajectory"

    def add_arguments(self, parser):
        parser.add_argument("--network", dest="network_path", help="network file (.json or .csv)")
        parser.add_argument("--model", help="wm, degroot, stubborn, fj or nbc")
        parser.add_argument("--distribution", help="initial-opinion distribution when no opinions are given")
        parser.add_argument("--seed", type=int)
        parser.add_argument("--max-steps", type=int)
        self.add_output_arguments(parser)

    def run(self, *args, **options):
        config = merge(
            read_config(options["config"]),
            network_path=options["network_path"],
            model=options["model"],
            distribution=options["distribution"],
            seed=options["seed"],
            max_steps=options["max_steps"],
        )
        serializer = SimulationConfigSerializer(data=config)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        seed = data["seed"]
        threads(options["threads"])  # checked only; one run is sequential

        if "network_path" in data:
            network = read_network(data["network_path"])
        else:
            network = generate(GeneratorConfigSerializer.build(data["network"]))

        if "opinions" in data:
            x0 = data["opinions"]
            if len(x0) != network.n:
                raise ConfigError(f"expected {network.n} opinions, got {len(x0)}")
            opinion_range = (min(x0), max(x0))
        else:
            x0 = sample_initial(data["distribution"], network.n, substream(seed, "opinions"))
            opinion_range = RANGES[data["distribution"]]

        stubborn = dict(stubborn_fraction=data["stubborn_fraction"], stubborn_probability=data["stubborn_probability"])
        if data["sample_params"]:
            params = sample_baseline_params(network.n, seed, opinion_range, **stubborn)
        else:
            params = BaselineParams(seed=seed, **stubborn)

        result = run_model(
            data["model"],
            x0,
            network,
            seed=seed,
            params=params,
            tol=data["tol"],
            max_iters=data["max_iters"],
            max_steps=data["max_steps"],
            consensus_tol=data["consensus_tol"],
            record_trajectory=True,
        )
        logger.info("%s run stopped after %d steps: %s", result.model, result.steps_taken, result.stop_reason.value)

        out = output_dir(options["out"])
        manifest = RunManifest(command="simulate", config=dict(serializer.data), master_seed=seed)
        record = result.as_record() | {"seed": str(seed), "network_hash": content_hash(network), "n": network.n}
        for path in (
            write_json(record, out / "run.json"),
            write_trajectory(result.trajectory_rows(), out / "trajectory", options["format"] or "csv"),
        ):
            manifest.add(path, out)
        manifest.write(out / MANIFEST_NAME)
        self.stdout.write(str(out))
