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

#ifndef TUNNELPROBE_GEOMETRY_HPP_
#define TUNNELPROBE_GEOMETRY_HPP_

// Pinhole camera with zero tilt, zero skew, square pixels and no
// distortion. Image frame: origin top-left, v grows downward. Camera frame:
// x right, y down, z along the optical axis.

namespace tunnelprobe::geometry {

struct CameraModel {
  double focal_length = 800.0;  // pixels
  double camera_height = 0.0;   // meters above the ground plane
  int image_width = 1024;
  int image_height = 1024;
  double principal_u = 512.0;
  double principal_v = 512.0;

  // Principal point at the image center.
  static CameraModel centered(double focal_length, double camera_height, int width,
                              int height);

  // Throws ValidationError when an invariant is violated.
  void validate() const;

  bool operator==(const CameraModel&) const = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Point3&) const = default;
};

struct ImagePoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// Throws std::domain_error for p.z <= 0 or non-finite coordinates.
ImagePoint project(const CameraModel& camera, const Point3& p);

/// Image-frame offset below the principal point of a ground-plane point at
/// the given depth: f * H_c / depth. Approaches 0 from above as depth grows,
/// so farther ground points sit closer to the horizon.
double ground_vertical(const CameraModel& camera, double depth);

}  // namespace tunnelprobe::geometry

#endif  // TUNNELPROBE_GEOMETRY_HPP_
