#include <algorithm>

#include "dpgrad/coset_enum.hpp"
#include "dpgrad/errors.hpp"

namespace dpgrad {

CosetTable coset_table_from_action(const Presentation& p,
                                   const std::vector<std::vector<std::uint32_t>>& perms) {
  const std::size_t rank = p.rank();
  if (perms.size() != rank) throw DomainError("need one permutation per generator");
  const std::size_t m = rank ? perms.front().size() : 1;
  std::vector<std::vector<std::uint32_t>> inv(rank, std::vector<std::uint32_t>(m));
  for (std::size_t g = 0; g < rank; ++g) {
    if (perms[g].size() != m) throw DomainError("permutations of different degrees");
    std::vector<std::uint8_t> hit(m, 0);
    for (std::size_t x = 0; x < m; ++x) {
      const auto y = perms[g][x];
      if (y >= m || hit[y]++) throw DomainError("not a permutation");
      inv[g][y] = static_cast<std::uint32_t>(x);
    }
  }
  auto image = [&](std::size_t x, std::size_t col) {
    return col % 2 == 0 ? perms[col / 2][x] : inv[col / 2][x];
  };
  const std::size_t cols = 2 * rank;
  std::vector<std::int64_t> pos(m, -1);
  std::vector<std::uint32_t> points{0};
  pos[0] = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t col = 0; col < cols; ++col) {
      const auto y = image(points[i], col);
      if (pos[y] < 0) {
        pos[y] = static_cast<std::int64_t>(points.size());
        points.push_back(y);
      }
    }
  CosetTable t;
  t.presentation = p;
  t.cosets = points.size();
  t.table.resize(t.cosets * cols);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t col = 0; col < cols; ++col)
      t.table[i * cols + col] = static_cast<std::int32_t>(pos[image(points[i], col)]);
  for (const auto& r : p.relators())
    for (std::size_t c = 0; c < t.cosets; ++c)
      if (trace(t, c, r) != c) throw DomainError("action does not satisfy the relators");
  t.complete = true;
  t.total_defined = t.cosets;
  return t;
}

}  // namespace dpgrad
