// mapforge: censuses, bijection verification and series computation for maps
// on orientable surfaces. Subcommands are wired up as the library lands.
#include <cstdio>

int main() {
    std::puts("mapforge: commands not wired yet");
    return 64;
}
