#pragma once

#include <chrono>
#include <optional>

namespace namo {

/// Cooperative wall-clock budget checked inside planner loops.
/// A default-constructed deadline never expires.
class Deadline {
public:
    Deadline() = default;

    static Deadline after(double seconds) {
        Deadline d;
        d.at_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds));
        return d;
    }

    bool expired() const {
        return at_ && std::chrono::steady_clock::now() >= *at_;
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace namo
