from networks.core import InfluenceNetwork

from .links import classify_links, decisive_subgraph, has_globally_reachable_node
from .sets import ENUMERATION_LIMIT, enumerate_maximal_cohesive


def cohesion_report(network: InfluenceNetwork, *, threads: int = 1, enumeration_limit: int = ENUMERATION_LIMIT) -> dict:
    """
    Structural summary of a network.

    ``maximal_cohesive`` is ``None`` above the enumeration limit and
    ``globally_reachable`` is ``None`` when some links could not be classified.
    """
    classification = classify_links(network, threads=threads)

    maximal = None
    if network.n <= enumeration_limit:
        maximal = [list(members) for members in enumerate_maximal_cohesive(network, limit=enumeration_limit)]

    reachable = None
    if classification.fully_checked:
        reachable = has_globally_reachable_node(decisive_subgraph(network, classification))

    return {
        "maximal_cohesive": maximal,
        "decisive": [list(link) for link in classification.decisive],
        "indecisive": [list(link) for link in classification.indecisive],
        "unchecked": [list(link) for link in classification.unchecked],
        "globally_reachable": reachable,
    }
