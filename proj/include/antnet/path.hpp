#ifndef ANTNET_PATH_HPP
#define ANTNET_PATH_HPP

#include <vector>

namespace antnet {

/// One ant's constructed walk. `complete` is true only when the walk
/// reached the destination; dead-ended walks keep their partial node
/// list and length but never deposit pheromone or count as a best tour.
struct PathResult {
    std::vector<int> nodes;
    double length = 0.0;
    bool complete = false;
};

}  // namespace antnet

#endif
