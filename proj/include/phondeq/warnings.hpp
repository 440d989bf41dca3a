#ifndef PHONDEQ_WARNINGS_HPP
#define PHONDEQ_WARNINGS_HPP

#include <functional>
#include <iostream>
#include <string>
#include <utility>

namespace phondeq {

/// Sink for non-fatal diagnostics; defaults to stderr. Tests swap it
/// out to capture messages.
inline std::function<void(const std::string&)>& warning_handler() {
    static std::function<void(const std::string&)> handler =
        [](const std::string& msg) { std::cerr << "phondeq: warning: " << msg << "\n"; };
    return handler;
}

inline void warn(const std::string& msg) { warning_handler()(msg); }

}  // namespace phondeq

#endif  // PHONDEQ_WARNINGS_HPP
