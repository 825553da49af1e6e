from wordlab.cli import main

main()
