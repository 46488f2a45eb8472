#ifndef VNE_RESULT_HPP_
#define VNE_RESULT_HPP_

#include <optional>
#include <string>
#include <utility>

namespace vne {

// Business-level rejection (insufficient resources, no feasible path, ...).
// Contract violations (double release, unknown ids) throw instead.
struct Rejection {
    enum class Kind {
        None,
        InsufficientBandwidth,
        InsufficientMemory,
        NodeUnmappable,
        LinkUnmappable,
        NoFeasiblePath,
        InsufficientAggregateBandwidth,
        InvalidSpec,
    };

    Kind kind = Kind::None;
    int element_id = -1;  // offending link/switch/node id when applicable
    std::string detail;
};

inline const char* to_string(Rejection::Kind k) {
    switch (k) {
        case Rejection::Kind::None: return "none";
        case Rejection::Kind::InsufficientBandwidth: return "insufficient-bandwidth";
        case Rejection::Kind::InsufficientMemory: return "insufficient-memory";
        case Rejection::Kind::NodeUnmappable: return "node-unmappable";
        case Rejection::Kind::LinkUnmappable: return "link-unmappable";
        case Rejection::Kind::NoFeasiblePath: return "no-feasible-path";
        case Rejection::Kind::InsufficientAggregateBandwidth:
            return "insufficient-aggregate-bandwidth";
        case Rejection::Kind::InvalidSpec: return "invalid-spec";
    }
    return "?";
}

template <typename T>
class Result {
public:
    Result(T value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    Result(Rejection r) : reject_(std::move(r)) {} // NOLINT(google-explicit-constructor)

    bool ok() const { return value_.has_value(); }
    explicit operator bool() const { return ok(); }

    T& value() { return *value_; }
    const T& value() const { return *value_; }
    T& operator*() { return *value_; }
    const T& operator*() const { return *value_; }
    T* operator->() { return &*value_; }
    const T* operator->() const { return &*value_; }

    const Rejection& rejection() const { return reject_; }

private:
    std::optional<T> value_;
    Rejection reject_;
};

}  // namespace vne

#endif
