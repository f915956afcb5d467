from qvalued.cli import main

main()
