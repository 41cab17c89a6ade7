#ifndef PRIVPOINTS_VERSION_HPP
#define PRIVPOINTS_VERSION_HPP

namespace privpoints {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace privpoints

#endif  // PRIVPOINTS_VERSION_HPP
