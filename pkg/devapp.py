import sys

from qcatalan.main import run

if __name__ == "__main__":
    # e.g. python devapp.py verify prop1 --max-rows 20
    sys.exit(run(sys.argv[1:]))
