from approval_seats.cli import main

main()
