"""Every parameter set satisfying the hypotheses with p in {3, 5} and p^e <= 5^6."""

from fewweight import cli

cli.main(["scan", "--p", "3,5", "--e", "1-8"])
