import logging
from pathlib import Path

from lab.commands import LabCommand
from lab.config import merge, output_dir, read_config, threads
from lab.manifest import RunManifest
from networks.formats import FORMATS, content_hash, serialize
from networks.generators import FAMILY_ALIASES, generate
from networks.models import Network
from networks.serializers import GeneratorConfigSerializer

logger = logging.getLogger(__name__)


class Command(LabCommand):
    help = "Draw a seeded random influence network and write it as JSON or CSV"

    def add_arguments(self, parser):
        parser.add_argument("--family", choices=sorted(FAMILY_ALIASES))
        parser.add_argument("--n", type=int)
        parser.add_argument("--m", type=int, help="Barabási-Albert links per new node")
        parser.add_argument("--d", type=int, help="Watts-Strogatz ring degree")
        parser.add_argument("--beta", type=float, help="Watts-Strogatz rewiring probability")
        parser.add_argument("--seed", type=int)
        parser.add_argument("--no-self-loops", dest="self_loops", action="store_false", default=None)
        parser.add_argument("--name", help="name of the stored row with --record")
        parser.add_argument("--record", action="store_true", help="also store the network in the database")
        self.add_output_arguments(parser, out_help="network file (default: MEDYN_OUTPUT_DIR/network.<format>)")

    def run(self, *args, **options):
        config = merge(
            read_config(options["config"]),
            family=options["family"],
            n=options["n"],
            m=options["m"],
            d=options["d"],
            beta=options["beta"],
            seed=options["seed"],
            self_loops=options["self_loops"],
        )
        serializer = GeneratorConfigSerializer(data=config)
        serializer.is_valid(raise_exception=True)
        generator = serializer.to_config()
        threads(options["threads"])  # checked only; one draw runs on one worker

        fmt = options["format"]
        if options["out"]:
            path = Path(options["out"])
            fmt = fmt or (path.suffix.lstrip(".") if path.suffix.lstrip(".") in FORMATS else "json")
        else:
            fmt = fmt or "json"
            path = output_dir(None) / f"network.{fmt}"

        manifest = RunManifest(command="generate", config=generator.as_dict(), master_seed=generator.seed)
        network = generate(generator)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(serialize(network, fmt))
        manifest.add(path)
        manifest.write(path.with_name(f"{path.stem}.manifest.json"))

        if options["record"]:
            stored = Network.from_influence(
                network,
                name=options["name"] or f"{generator.family.value} n={generator.n} seed={generator.seed}",
                family=generator.family.value,
                seed=generator.seed,
                parameters=generator.as_dict(),
            )
            stored.save()
            logger.info("Stored network %s", stored.pk)

        self.stdout.write(f"{path} {content_hash(network)}")
