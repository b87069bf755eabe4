###############################################################################
#
# Copyright 2019, University of Stuttgart: Institute for Natural Language Processing (IMS)
#
# This file is part of GeoForge.
# GeoForge is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3.
#
# GeoForge is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with GeoForge.  If not, see <https://www.gnu.org/licenses/>.
#
###############################################################################

""" Raster value type and image file I/O. """

import hashlib
import os

import numpy as np
from PIL import Image, UnidentifiedImageError

from modules.renderer.exceptions import IoFailure, UnsupportedFormat

WHITE = (255, 255, 255)

# formats accepted on load; PGM files are reported by Pillow as PPM
READABLE_FORMATS = ('PNG', 'PPM', 'BMP', 'JPEG', 'GIF', 'TIFF')


class Raster(object):
    """ An immutable row-major 8-bit RGB image.

    Args:
        pixels (np.ndarray): array of shape (height, width, 3); it is copied and
                             frozen so a raster never changes after construction
    """

    def __init__(self, pixels: np.ndarray):
        pixels = np.asarray(pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ValueError('expected an (height, width, 3) array, got {}'.format(pixels.shape))
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError('raster dimensions must be at least 1x1')
        self._pixels = np.array(pixels, dtype=np.uint8, copy=True)
        self._pixels.flags.writeable = False

    @classmethod
    def blank(cls, width: int, height: int, color=WHITE) -> 'Raster':
        canvas = np.empty((height, width, 3), dtype=np.uint8)
        canvas[:, :] = color
        return cls(canvas)

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return int(self._pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self._pixels.shape[0])

    @property
    def shape(self):
        return (self.width, self.height)

    def luma(self) -> np.ndarray:
        """ Returns the (height, width) luma plane 0.299 R + 0.587 G + 0.114 B. """
        rgb = self._pixels.astype(np.float64)
        return 0.299 * rgb[:, :, 0] + 0.587 * rgb[:, :, 1] + 0.114 * rgb[:, :, 2]

    def content_hash(self) -> str:
        """ sha256 over the dimensions and the pixel bytes. """
        digest = hashlib.sha256()
        digest.update('{}x{}:'.format(self.width, self.height).encode('ascii'))
        digest.update(self._pixels.tobytes())
        return digest.hexdigest()

    def copy_pixels(self) -> np.ndarray:
        """ Returns a writable copy of the pixel array. """
        return np.array(self._pixels, copy=True)

    def to_image(self) -> Image.Image:
        return Image.fromarray(np.ascontiguousarray(self._pixels), mode='RGB')

    def __eq__(self, other):
        if not isinstance(other, Raster):
            return NotImplemented
        return self._pixels.shape == other._pixels.shape and \
            bool(np.array_equal(self._pixels, other._pixels))

    def __hash__(self):
        return hash(self.content_hash())

    def __repr__(self):
        return 'Raster({}x{})'.format(self.width, self.height)


def load_raster(path: str) -> Raster:
    """ Reads an image file into an RGB raster.

    Transparent images are composed over white, grayscale images are expanded
    to three equal channels.

    Raises:
        IoFailure: the file does not exist or cannot be read
        UnsupportedFormat: the file is not an image Pillow can decode
    """
    path = str(path)
    if not os.path.isfile(path):
        raise IoFailure(path, 'no such file')
    try:
        with Image.open(path) as image:
            if image.format not in READABLE_FORMATS:
                raise UnsupportedFormat(path)
            image.load()
            if image.mode in ('RGBA', 'LA') or \
                    (image.mode == 'P' and 'transparency' in image.info):
                rgba = image.convert('RGBA')
                background = Image.new('RGBA', rgba.size, WHITE + (255,))
                image = Image.alpha_composite(background, rgba)
            rgb = image.convert('RGB')
            pixels = np.asarray(rgb, dtype=np.uint8)
    except UnidentifiedImageError:
        raise UnsupportedFormat(path)
    except OSError as err:
        raise IoFailure(path, str(err))
    return Raster(pixels)


def save_raster(raster: Raster, path: str):
    """ Writes a raster as 8-bit RGB PNG (lossless) or as P5 grayscale PGM.

    Raises:
        UnsupportedFormat: extension other than .png or .pgm
        IoFailure: the parent directory is missing or not writable
    """
    path = str(path)
    suffix = os.path.splitext(path)[1].lower()
    if suffix == '.png':
        image, fmt = raster.to_image(), 'PNG'
    elif suffix == '.pgm':
        gray = np.clip(np.floor(raster.luma() + 0.5), 0, 255).astype(np.uint8)
        image, fmt = Image.fromarray(gray, mode='L'), 'PPM'
    else:
        raise UnsupportedFormat(path)
    try:
        image.save(path, format=fmt)
    except OSError as err:
        raise IoFailure(path, str(err))


def standardize(raster: Raster, size: int = 1000) -> Raster:
    """ Rescales the longer side to ``size`` with nearest-neighbour sampling
    (keeps strokes binary) and pads to a white square, image at the top-left. """
    if raster.width == size and raster.height == size:
        return raster
    scale = size / float(max(raster.width, raster.height))
    new_w = max(1, min(size, int(round(raster.width * scale))))
    new_h = max(1, min(size, int(round(raster.height * scale))))
    resized = raster.to_image().resize((new_w, new_h), resample=Image.NEAREST)
    canvas = Image.new('RGB', (size, size), WHITE)
    canvas.paste(resized, (0, 0))
    return Raster(np.asarray(canvas, dtype=np.uint8))
