# Command-line package for pqsaddle.
# Settings (.env), system-file codec, JSON reports and the argparse entry point.
