"""Command registration."""

from cnpd.cli.registry import CommandRegistry


def register_commands(registry: CommandRegistry) -> None:
    """Register all subcommands.

    Args:
        registry: Registry to fill, in usage-text order.
    """
    from cnpd.cli.handlers import classify, numeric, series, spec, variety

    for command in (
        spec.ValidateCommand(),
        spec.RhoCommand(),
        spec.NormalizeCommand(),
        spec.WeightsCommand(),
        series.CNPCheckCommand(),
        variety.CircuitsCommand(),
        variety.VarietyCommand(),
        variety.MemberCommand(),
        variety.InvertPointCommand(),
        spec.EvalCommand(),
        classify.SimilarCommand(),
        classify.ClassifyCommand(),
        numeric.GramCommand(),
        series.OrderedFactorizationCommand(),
        series.ZetaFactorCommand(),
        classify.GeneratingCommand(),
        variety.AffineRankCommand(),
        series.ZetaQuotientCommand(),
        spec.FromWeightsCommand(),
        series.NormCommand(),
    ):
        registry.register(command)
