#ifndef NHP_SRC_PGM_IO_HPP
#define NHP_SRC_PGM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nhp::detail {

std::vector<std::uint8_t> load_pgm_bytes(const std::string& path, int& w, int& h);
void save_pgm_bytes(const std::string& path, int w, int h,
                    const std::vector<std::uint8_t>& data);

} // namespace nhp::detail

#endif
