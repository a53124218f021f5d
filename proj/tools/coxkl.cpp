int main() { return 2; }
// placeholder until the subcommands land
