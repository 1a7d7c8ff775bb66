#include "rmcfair/annotation.hpp"

namespace rmcfair {

alphabet gamma_alphabet() {
    alphabet g;
    for (int v = 0; v < 8; ++v) {
        std::string name(3, '0');
        if (v & 4) name[0] = '1';
        if (v & 2) name[1] = '1';
        if (v & 1) name[2] = '1';
        g.intern(name);
    }
    return g;
}

} // namespace rmcfair
