import json
from pathlib import Path

import pandas as pd

from cohesion.report import cohesion_report
from equilibria.verdicts import classify
from lab.commands import LabCommand, read_network, write_json
from lab.config import ConfigError, threads
from lab.manifest import RunManifest
from networks.formats import content_hash, write_table
from networks.serializers import OpinionsSerializer

LINK_STATUSES = ("decisive", "indecisive", "unchecked")


def read_opinions(path) -> list[float]:
    """A JSON list, ``{"opinions": [...]}``, or one number per line."""
    text = Path(path).read_text()
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        document = json.loads(stripped)
        data = document if isinstance(document, dict) else {"opinions": document}
    else:
        data = {"opinions": [line for line in stripped.splitlines() if line.strip()]}
    serializer = OpinionsSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data["opinions"]


def link_table(report: dict) -> pd.DataFrame:
    rows = [(i, j, status) for status in LINK_STATUSES for i, j in report[status]]
    frame = pd.DataFrame(rows, columns=["source", "target", "link"])
    return frame.sort_values(["source", "target"], ignore_index=True)


class Command(LabCommand):
    help = "Cohesive sets, decisive links and global reachability of a network, plus an optional equilibrium verdict"

    def add_arguments(self, parser):
        parser.add_argument("network", help="network file (.json or .csv)")
        parser.add_argument("--opinions", help="opinion vector to classify against the network")
        self.add_output_arguments(
            parser, out_help="report file; printed to stdout when omitted. csv writes the link table", config=False
        )

    def run(self, *args, **options):
        network = read_network(options["network"])
        report = {"n": network.n, "content_hash": content_hash(network)}
        report.update(cohesion_report(network, threads=threads(options["threads"])))

        if options["opinions"]:
            opinions = read_opinions(options["opinions"])
            if len(opinions) != network.n:
                raise ConfigError(f"expected {network.n} opinions, got {len(opinions)}")
            report["equilibrium"] = classify(network, opinions).as_dict()

        fmt = options["format"] or "json"
        if not options["out"]:
            if fmt == "csv":
                self.stdout.write(link_table(report).to_csv(index=False), ending="")
            else:
                self.stdout.write(json.dumps(report, indent=2, sort_keys=True))
            return

        if fmt == "csv":
            path = write_table(link_table(report), options["out"], fmt)
        else:
            path = write_json(report, options["out"])
        manifest = RunManifest(
            command="analyze",
            config={"network": str(options["network"]), "opinions": options["opinions"], "format": fmt},
        )
        manifest.add(path)
        manifest.write(path.with_name(f"{path.stem}.manifest.json"))
        self.stdout.write(str(path))
