#ifndef GRWHIT_VERSION_HPP
#define GRWHIT_VERSION_HPP

namespace grwhit {

inline constexpr const char* version = "0.1.0";

} // namespace grwhit

#endif // GRWHIT_VERSION_HPP
