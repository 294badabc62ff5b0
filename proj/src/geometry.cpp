/* Copyright 2026 The tunnelprobe Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "tunnelprobe/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tunnelprobe/error.hpp"

namespace tunnelprobe::geometry {

CameraModel CameraModel::centered(double focal_length, double camera_height, int width,
                                  int height) {
  CameraModel c;
  c.focal_length = focal_length;
  c.camera_height = camera_height;
  c.image_width = width;
  c.image_height = height;
  c.principal_u = width / 2.0;
  c.principal_v = height / 2.0;
  c.validate();
  return c;
}

void CameraModel::validate() const {
  if (!(std::isfinite(focal_length) && focal_length > 0.0)) {
    throw ValidationError("camera: focal_length must be positive");
  }
  if (!(std::isfinite(camera_height) && camera_height >= 0.0)) {
    throw ValidationError("camera: camera_height must be non-negative");
  }
  if (image_width <= 0 || image_height <= 0) {
    throw ValidationError("camera: image dimensions must be positive");
  }
  if (!(principal_u >= 0.0 && principal_u <= image_width && principal_v >= 0.0 &&
        principal_v <= image_height)) {
    throw ValidationError("camera: principal point outside the image");
  }
}

ImagePoint project(const CameraModel& camera, const Point3& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw std::domain_error("project: non-finite point coordinate");
  }
  if (p.z <= 0.0) {
    std::ostringstream os;
    os << "project: point depth z=" << p.z << " must be positive";
    throw std::domain_error(os.str());
  }
  return ImagePoint{camera.principal_u + camera.focal_length * p.x / p.z,
                    camera.principal_v + camera.focal_length * p.y / p.z, p.z};
}

double ground_vertical(const CameraModel& camera, double depth) {
  if (!(depth > 0.0)) {
    std::ostringstream os;
    os << "ground_vertical: depth=" << depth << " must be positive";
    throw std::domain_error(os.str());
  }
  return camera.focal_length * camera.camera_height / depth;
}

}  // namespace tunnelprobe::geometry
