#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace relopt {

enum class mod_family { qam, psk };

// Constellation descriptor. QAM orders must be square (4, 16, 64, ...).
struct modulation {
    mod_family family = mod_family::qam;
    int order = 4;

    modulation() = default;
    modulation(mod_family fam, int m) : family(fam), order(m) {
        if (m < 4 || (m & (m - 1)) != 0)
            throw std::domain_error("modulation: order must be a power of two >= 4");
        if (fam == mod_family::qam) {
            const int root = static_cast<int>(std::lround(std::sqrt(double(m))));
            if (root * root != m)
                throw std::domain_error("modulation: QAM order must be a perfect square");
        }
    }

    int bits() const { return static_cast<int>(std::lround(std::log2(double(order)))); }

    // SNR scaling factor g in the conditional-error kernel
    double g() const {
        if (family == mod_family::qam) return 3.0 / (2.0 * (order - 1));
        return std::pow(std::sin(3.14159265358979323846 / order), 2.0);
    }

    // peak-to-average power ratio driving the amplifier overhead
    double papr() const {
        if (family == mod_family::qam) {
            const double rm = std::sqrt(double(order));
            return 3.0 * (rm - 1.0) / (rm + 1.0);
        }
        return 1.0; // constant envelope
    }

    std::string name() const {
        return std::to_string(order) + (family == mod_family::qam ? "-QAM" : "-PSK");
    }
};

inline modulation make_qam(int order) { return modulation(mod_family::qam, order); }
inline modulation make_psk(int order) { return modulation(mod_family::psk, order); }

} // namespace relopt
